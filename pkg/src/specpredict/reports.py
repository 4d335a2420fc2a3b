"""Deterministic report files: CSV, JSON and decorative SVG plots.

Every file embeds the fully resolved configuration and the pseudorandom
algorithm identifier.  CSV uses comma separators, '.' decimals, scientific
notation with 17 significant digits (round-trip exact for doubles), LF line
endings and a mandatory header row; comment lines starting with '#' carry
the metadata.  The SVG writer is hand-rolled so repeated runs are
byte-identical (figure libraries embed per-process ids).
"""

from __future__ import annotations

import json
import math
import os

from .signals import ALGORITHM_ID


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.16e}"
    if v is None:
        return ""
    return str(v)


def _metadata_block(metadata: dict) -> str:
    payload = dict(metadata)
    payload.setdefault("generator", ALGORITHM_ID)
    return "# " + json.dumps(payload, sort_keys=True)


def write_csv(path: str, columns, rows, metadata: dict) -> None:
    """Write rows (sequences aligned with ``columns``) under a metadata comment."""
    lines = [_metadata_block(metadata), ",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def write_json(path: str, payload: dict, metadata: dict) -> None:
    body = {"metadata": {**metadata, "generator": metadata.get("generator", ALGORITHM_ID)}}
    body.update(payload)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(body, sort_keys=True, indent=2, allow_nan=True) + "\n")


def rows_from_dataclasses(items, fields) -> list:
    return [[getattr(item, f) for f in fields] for item in items]


def _svg_coords(values, lo, hi, pix_lo, pix_hi, log_scale):
    out = []
    for v in values:
        if log_scale:
            v = math.log10(max(v, 1e-320))
        u = 0.0 if hi == lo else (v - lo) / (hi - lo)
        out.append(pix_lo + u * (pix_hi - pix_lo))
    return out


def write_svg_lineplot(
    path: str,
    xs,
    series: dict,
    title: str,
    x_label: str,
    y_label: str,
    log_x: bool = True,
    log_y: bool = True,
) -> None:
    """Minimal deterministic line plot; decorative only, no logic reads it."""
    width, height = 640, 420
    margin = 60
    palette = ["#1f6fb2", "#c44e52", "#55a868", "#8172b2", "#ccaa14"]

    def prep(vals, log_scale):
        if not log_scale:
            return list(map(float, vals))
        return [math.log10(max(float(v), 1e-320)) for v in vals]

    px = prep(xs, log_x)
    all_y = [v for vals in series.values() for v in prep(vals, log_y)]
    x_lo, x_hi = min(px), max(px)
    y_lo, y_hi = min(all_y), max(all_y)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def map_x(v):
        return margin + (v - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def map_y(v):
        return height - margin - (v - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="24" text-anchor="middle" font-size="15">{title}</text>',
        f'<text x="{width // 2}" y="{height - 12}" text-anchor="middle" font-size="12">{x_label}</text>',
        f'<text x="16" y="{height // 2}" font-size="12" transform="rotate(-90 16 {height // 2})" '
        f'text-anchor="middle">{y_label}</text>',
        f'<rect x="{margin}" y="{margin}" width="{width - 2 * margin}" '
        f'height="{height - 2 * margin}" fill="none" stroke="#444"/>',
    ]
    for i, (name, vals) in enumerate(series.items()):
        py = prep(vals, log_y)
        pts = " ".join(f"{map_x(a):.2f},{map_y(b):.2f}" for a, b in zip(px, py))
        color = palette[i % len(palette)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="2"/>')
        parts.append(
            f'<text x="{width - margin + 4}" y="{margin + 16 * (i + 1)}" '
            f'font-size="11" fill="{color}">{name}</text>'
        )
    parts.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")


def ensure_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
