"""Command-line entry point.

Subcommands wrap the experiment operations one-to-one:

    predict, sweep, lemma, robustness, counterexample, demo-negative,
    gen-signal

Each reads a single JSON config (``--config``), optionally overridden leaf
by leaf with repeatable ``--set key=value`` flags, validates every module
precondition up front, and writes reports into ``--out``.  Exit codes:
0 success, 2 config validation failure, 3 numerical failure (an overflow
saturation reached a quantity that feeds a pass/fail flag).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .degeneracy import DegeneracyClass
from .experiments import (
    DEFAULT_R,
    _member_spectrum,
    counterexample_experiment,
    gamma_sweep,
    make_class_ensemble,
    nonpredictability_demo,
    robustness_experiment,
)
from .kernels import AnticausalKernel, transfer
from .predictor import build_predictor, causality_defect, find_gamma0, lemma_check
from .reports import (
    ensure_dir,
    format_value,
    rows_from_dataclasses,
    write_csv,
    write_json,
    write_svg_lineplot,
)
from .signals import GeneratorConfig, class_norm, sample_bandlimited, sample_class_member
from .spectral import (
    Spectrum,
    forward_transform,
    inverse_transform,
    make_grid,
    norm,
    to_centered,
)


class ConfigError(ValueError):
    """Configuration rejected before any computation."""


_NUM = (int, float)
_SCHEMA = {
    "grid": {"n": (int,), "delta_t": _NUM},
    "kernel": {"poles": (list,), "numerator": (list,)},
    "class": {"q": _NUM, "c": _NUM},
    "predictor": {"r": _NUM, "gammas": (list,)},
    "signal": {
        "kind": (str,),
        "seed": (int,),
        "profile": (str,),
        "sigma": _NUM,
        "omega_bar": _NUM,
    },
    "ensemble": {"size": (int,), "seed": (int,)},
    "noise": {"nus": (list,), "seed": (int,), "band": (list, type(None))},
    "counterexample": {"a": _NUM, "seed": (int,)},
    "negative": {"q_bad": _NUM, "seed": (int,), "size": (int,)},
    "lemma": {"omega_floor": _NUM, "gamma0_bracket": (list,)},
    "output": {"directory": (str,), "formats": (list,)},
}

_REQUIRED = {
    "predict": ("grid", "kernel", "class", "predictor", "signal"),
    "sweep": ("grid", "kernel", "class", "predictor", "ensemble"),
    "lemma": ("grid", "kernel", "class", "predictor"),
    "robustness": ("grid", "kernel", "class", "predictor", "signal", "noise"),
    "counterexample": ("grid", "kernel", "predictor", "counterexample"),
    "demo-negative": ("grid", "kernel", "class", "predictor", "negative"),
    "gen-signal": ("grid", "signal"),
}

# commands whose prediction step pairs the exponent r with the class exponent q
_NEEDS_ADMISSIBLE_R = {"predict", "sweep", "robustness", "demo-negative"}


def _validate_tree(config: dict) -> None:
    if not isinstance(config, dict):
        raise ConfigError("config root must be a JSON object")
    for section, body in config.items():
        if section not in _SCHEMA:
            raise ConfigError(f"unknown key: {section}")
        if not isinstance(body, dict):
            raise ConfigError(f"section '{section}' must be an object")
        for key, value in body.items():
            if key not in _SCHEMA[section]:
                raise ConfigError(f"unknown key: {section}.{key}")
            expected = _SCHEMA[section][key]
            if isinstance(value, bool) or not isinstance(value, expected):
                names = "/".join(t.__name__ for t in expected)
                raise ConfigError(f"{section}.{key} must be {names}, got {value!r}")


def _require(config: dict, command: str) -> None:
    for section in _REQUIRED[command]:
        if section not in config:
            raise ConfigError(f"command '{command}' requires the '{section}' section")
        if command == "gen-signal" and section == "signal":
            if config["signal"].get("kind", "class_member") == "class_member" and "class" not in config:
                raise ConfigError("class_member signals require the 'class' section")


def _apply_overrides(config: dict, pairs) -> None:
    for pair in pairs or ():
        if "=" not in pair:
            raise ConfigError(f"--set expects key=value, got {pair!r}")
        dotted, raw = pair.split("=", 1)
        keys = dotted.split(".")
        if len(keys) != 2:
            raise ConfigError(f"--set key must be section.leaf, got {dotted!r}")
        try:
            value = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        config.setdefault(keys[0], {})[keys[1]] = value


def _build_objects(config: dict, command: str):
    """Turn validated JSON into domain objects, surfacing precondition names."""
    grid_cfg = config["grid"]
    try:
        grid = make_grid(grid_cfg["n"], grid_cfg["delta_t"])
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"grid: {exc}") from exc

    kernel = None
    if "kernel" in config:
        try:
            kernel = AnticausalKernel(
                tuple(config["kernel"]["poles"]),
                tuple(config["kernel"].get("numerator", [1.0])),
            )
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"kernel: {exc}") from exc

    cls = None
    if "class" in config:
        try:
            cls = DegeneracyClass(config["class"]["q"], config["class"]["c"])
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"class: {exc}") from exc

    r, gammas = DEFAULT_R, ()
    if "predictor" in config:
        pred = config["predictor"]
        if "r" not in pred or "gammas" not in pred:
            raise ConfigError("predictor section needs both 'r' and 'gammas'")
        r = float(pred["r"])
        gammas = tuple(float(g) for g in pred["gammas"])
        if len(gammas) == 0:
            raise ConfigError("predictor.gammas must be nonempty")
        if any(not (g > 0 and math.isfinite(g)) for g in gammas):
            raise ConfigError("predictor.gammas must be positive finite numbers")
        if not (r > 0 and math.isfinite(r)):
            raise ConfigError("predictor.r must be positive and finite")
        if cls is not None and command in _NEEDS_ADMISSIBLE_R and not r > cls.min_sharpness_exponent:
            raise ConfigError(
                f"predictor.r={r} violates the hypothesis r > 2/(q-1) = "
                f"{cls.min_sharpness_exponent} for q={cls.q}"
            )
    return grid, kernel, cls, r, gammas


def _signal_from_config(config: dict, grid, cls):
    sig = config.get("signal", {})
    kind = sig.get("kind", "class_member")
    profile = sig.get("profile", "flat")
    cfg = GeneratorConfig(
        seed=sig.get("seed", 0),
        grid=grid,
        profile=profile,
        sigma=sig.get("sigma"),
    )
    if kind == "class_member":
        if cls is None:
            raise ConfigError("class_member signals require the 'class' section")
        return sample_class_member(cls, cfg), cfg
    if kind == "bandlimited":
        if "omega_bar" not in sig:
            raise ConfigError("bandlimited signals require signal.omega_bar")
        return sample_bandlimited(float(sig["omega_bar"]), cfg), cfg
    raise ConfigError(f"signal.kind must be 'class_member' or 'bandlimited', got {kind!r}")


def _resolved(config: dict, command: str) -> dict:
    return {"command": command, "config": config}


def _formats(config: dict, flag: str) -> tuple:
    if flag:
        formats = tuple(part.strip() for part in flag.split(","))
    else:
        formats = tuple(config.get("output", {}).get("formats", ["csv", "json"]))
    unknown = set(formats) - {"csv", "json", "svg"}
    if unknown:
        raise ConfigError(f"unknown output formats: {sorted(unknown)}")
    return formats


def _timeseries_csv(path, x, meta):
    t = x.grid.times()
    write_csv(path, ["t", "x"], list(zip(t, x.samples.real)), meta)


def _spectrum_csv(path, X, meta):
    om = to_centered(X.grid.omegas())
    vals = to_centered(X.values)
    write_csv(path, ["omega", "re", "im"], list(zip(om, vals.real, vals.imag)), meta)


def _cmd_predict(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "predict")
    if len(gammas) != 1:
        raise ConfigError("predict requires exactly one gamma")
    x, _ = _signal_from_config(config, grid, cls)
    pt = build_predictor(kernel, gammas[0], r, grid)
    # generated signals carry constructional spectral zeros; the experiment
    # layer restores them before applying transfers (see _member_spectrum)
    X = _member_spectrum(x)
    K = transfer(kernel, grid).values
    y = inverse_transform(Spectrum(grid, K * X))
    y_hat = inverse_transform(Spectrum(grid, pt.khat_values * X))
    diff = inverse_transform(Spectrum(grid, (pt.khat_values - K) * X))
    meta = _resolved(config, "predict")
    if "csv" in formats:
        _timeseries_csv(f"{outdir}/x.csv", x, meta)
        _timeseries_csv(f"{outdir}/y.csv", y, meta)
        _timeseries_csv(f"{outdir}/yhat.csv", y_hat, meta)
        write_csv(
            f"{outdir}/khat.csv",
            ["t", "khat"],
            list(zip(grid.times(), pt.khat_time.samples.real)),
            meta,
        )
    err_l2 = norm(diff, 2)
    err_sup = norm(diff, math.inf)
    write_json(
        f"{outdir}/summary.json",
        {
            "err_l2": err_l2,
            "err_l2_rel": 0.0 if err_l2 == 0.0 else err_l2 / max(norm(y, 2), 1e-300),
            "err_sup": err_sup,
            "err_sup_rel": 0.0 if err_sup == 0.0 else err_sup / max(norm(y, math.inf), 1e-300),
            "kappa_sup": pt.kappa_sup,
            "causality_defect": causality_defect(pt),
            "omega_threshold": pt.omega_threshold,
            "saturated": pt.any_saturated,
        },
        meta,
    )
    return 0


_SWEEP_FIELDS = (
    "gamma",
    "err_l2_abs",
    "err_l2_rel",
    "err_sup_abs",
    "err_sup_rel",
    "kappa_sup",
    "omega_threshold",
    "causality_defect",
    "i1",
    "i2",
    "lemma_pass_high_band",
    "lemma_pass_low_band",
    "lemma_tail_dev",
)


def _cmd_sweep(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "sweep")
    ens_cfg = config["ensemble"]
    cfg = GeneratorConfig(seed=ens_cfg.get("seed", 0), grid=grid)
    ensemble = make_class_ensemble(cls, cfg, ens_cfg.get("size", 10))
    report = gamma_sweep(kernel, cls, gammas, r, ensemble, metadata={"seed": cfg.seed})
    meta = _resolved(config, "sweep")
    if "csv" in formats:
        write_csv(
            f"{outdir}/sweep.csv",
            list(_SWEEP_FIELDS),
            rows_from_dataclasses(report.rows, _SWEEP_FIELDS),
            meta,
        )
    if "json" in formats:
        write_json(
            f"{outdir}/sweep.json",
            {
                "rows": [
                    {f: getattr(row, f) for f in _SWEEP_FIELDS} for row in report.rows
                ],
                "sweep_metadata": report.metadata,
            },
            meta,
        )
    if "svg" in formats:
        gammas_list = [row.gamma for row in report.rows]
        write_svg_lineplot(
            f"{outdir}/sweep.svg",
            gammas_list,
            {
                "err_l2_rel": [max(row.err_l2_rel, 1e-320) for row in report.rows],
                "err_sup_rel": [max(row.err_sup_rel, 1e-320) for row in report.rows],
            },
            title="worst-case relative error vs gamma",
            x_label="gamma (log)",
            y_label="relative error (log)",
        )
    return 0


def _cmd_lemma(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "lemma")
    lemma_cfg = config.get("lemma", {})
    floor = float(lemma_cfg.get("omega_floor", 0.5))
    bracket = tuple(lemma_cfg.get("gamma0_bracket", [0.5, 2000.0]))
    reports = [lemma_check(build_predictor(kernel, g, r, grid), cls, floor) for g in gammas]
    gamma0 = find_gamma0(kernel, cls, r, grid, bracket=bracket)
    fields = (
        "gamma",
        "omega_threshold",
        "pass_positivity",
        "pass_factor_dev",
        "tail_dev_max",
        "pass_low_band",
        "low_band_nodes",
        "low_band_margin",
    )
    meta = _resolved(config, "lemma")
    if "csv" in formats:
        write_csv(
            f"{outdir}/lemma.csv", list(fields), rows_from_dataclasses(reports, fields), meta
        )
    write_json(
        f"{outdir}/lemma.json",
        {
            "gamma0": gamma0,
            "pass_high_band": all(rep.pass_high_band for rep in reports),
            "tail_dev_strictly_decreasing": all(
                a.tail_dev_max > b.tail_dev_max for a, b in zip(reports, reports[1:])
            ),
            "pass_low_band": all(rep.pass_low_band for rep in reports),
            "rows": [{f: getattr(rep, f) for f in fields} for rep in reports],
        },
        meta,
    )
    return 0


def _cmd_robustness(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "robustness")
    x0, _ = _signal_from_config(config, grid, cls)
    noise_cfg = config["noise"]
    band = noise_cfg.get("band")
    cfg = GeneratorConfig(
        seed=noise_cfg.get("seed", 0),
        grid=grid,
        band=tuple(band) if band else None,
    )
    nus = [float(v) for v in noise_cfg["nus"]]
    reports = [robustness_experiment(kernel, g, r, x0, nus, cfg) for g in gammas]
    meta = _resolved(config, "robustness")
    fields = ("nu", "err_sup_noisy", "bound", "holds", "j0", "j_eta")
    rows = []
    for rep in reports:
        for row in rep.rows:
            rows.append([rep.gamma] + [getattr(row, f) for f in fields])
    if "csv" in formats:
        write_csv(f"{outdir}/robustness.csv", ["gamma"] + list(fields), rows, meta)
    write_json(
        f"{outdir}/robustness.json",
        {
            "per_gamma": [
                {
                    "gamma": rep.gamma,
                    "eps_clean": rep.eps_clean,
                    "kappa_sup": rep.kappa_sup,
                    "saturated": rep.saturated,
                    "rows": [{f: getattr(row, f) for f in fields} for row in rep.rows],
                }
                for rep in reports
            ],
            "all_bounds_hold": all(row.holds for rep in reports for row in rep.rows),
        },
        meta,
    )
    if any(rep.saturated for rep in reports):
        print(
            "numerical failure: overflow saturation reached the gain bound check",
            file=sys.stderr,
        )
        return 3
    return 0


def _cmd_counterexample(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "counterexample")
    ce = config["counterexample"]
    cfg = GeneratorConfig(seed=ce.get("seed", 0), grid=grid)
    report = counterexample_experiment(float(ce["a"]), kernel, gammas, cfg, r=r)
    fields = (
        "gamma",
        "e1",
        "e2",
        "identity_lhs",
        "identity_rhs",
        "residual",
        "e1_sq_log",
        "e2_sq_log",
        "identity_lhs_log",
        "identity_rhs_log",
        "identity_rel_gap",
        "identity_ok",
        "floor_ok",
    )
    meta = _resolved(config, "counterexample")
    if "csv" in formats:
        write_csv(
            f"{outdir}/counterexample.csv",
            list(fields),
            rows_from_dataclasses(report.rows, fields),
            meta,
        )
    write_json(
        f"{outdir}/counterexample.json",
        {
            "split": report.split,
            "no_gamma_predicts_both": report.no_gamma_predicts_both,
            "rows": [{f: getattr(row, f) for f in fields} for row in report.rows],
        },
        meta,
    )
    return 0


def _cmd_demo_negative(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "demo-negative")
    neg = config["negative"]
    q_bad = float(neg["q_bad"])
    if not (0.0 < q_bad < 1.0):
        raise ConfigError(f"negative.q_bad must lie strictly inside (0, 1), got {q_bad}")
    cfg = GeneratorConfig(seed=neg.get("seed", 0), grid=grid)
    report = nonpredictability_demo(
        q_bad, cls.c, kernel, gammas, cfg, r, size=neg.get("size", 3), q_reference=cls.q
    )
    fields = ("gamma", "err_rel_slow", "err_rel_reference")
    meta = _resolved(config, "demo-negative")
    if "csv" in formats:
        write_csv(
            f"{outdir}/negative.csv",
            list(fields),
            rows_from_dataclasses(report.rows, fields),
            meta,
        )
    write_json(
        f"{outdir}/negative.json",
        {
            "label": report.label,
            "q_bad": report.q_bad,
            "final_ratio": report.final_ratio,
            "rows": [{f: getattr(row, f) for f in fields} for row in report.rows],
        },
        meta,
    )
    return 0


def _cmd_gen_signal(config, outdir, formats):
    grid, kernel, cls, r, gammas = _build_objects(config, "gen-signal")
    x, cfg = _signal_from_config(config, grid, cls)
    meta = _resolved(config, "gen-signal")
    if "csv" in formats:
        _timeseries_csv(f"{outdir}/signal.csv", x, meta)
        _spectrum_csv(f"{outdir}/signal_spectrum.csv", forward_transform(x), meta)
    write_json(
        f"{outdir}/signal.json",
        {
            "l2": norm(x, 2),
            "sup": norm(x, math.inf),
            "class_norm": None if cls is None else format_value(class_norm(x, cls)),
        },
        meta,
    )
    return 0


_COMMANDS = {
    "predict": _cmd_predict,
    "sweep": _cmd_sweep,
    "lemma": _cmd_lemma,
    "robustness": _cmd_robustness,
    "counterexample": _cmd_counterexample,
    "demo-negative": _cmd_demo_negative,
    "gen-signal": _cmd_gen_signal,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="specpredict",
        description="Causal prediction of anti-causal convolutions: experiments and reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the JSON configuration")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument(
            "--set",
            dest="overrides",
            action="append",
            metavar="KEY=VALUE",
            help="override a config leaf, e.g. predictor.r=4",
        )
        p.add_argument("--format", default=None, help="comma list out of csv,json,svg")
    args = parser.parse_args(argv)

    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
        _apply_overrides(config, args.overrides)
        _validate_tree(config)
        _require(config, args.command)
        formats = _formats(config, args.format)
        outdir = args.out if args.out != "." else config.get("output", {}).get("directory", ".")
        ensure_dir(outdir)
        return _COMMANDS[args.command](config, outdir, formats)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        # module-level precondition violations surface as config errors too
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
