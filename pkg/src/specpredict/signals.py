"""Seed-deterministic test-signal generators.

All generators are pure functions of (parameters, seed).  The pseudorandom
source is numpy's Philox counter generator keyed through a SeedSequence with
a per-purpose spawn key, so outputs are reproducible bit-exactly across
platforms; :data:`ALGORITHM_ID` names the scheme inside every report.

Class members are built spectrum-first (envelope times random phase), tapered
to the middle half of the time window for wraparound safety, then projected
back under the envelope so the degeneracy inequality holds exactly at every
node.  The last projection is spectral, which is what makes membership exact;
the time support is then "near-compact", with guard residues held under the
calibration guard level on adequately long windows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.special import erfc

from .degeneracy import DegeneracyClass, log_weight
from .spectral import (
    FrequencyGrid,
    Spectrum,
    TimeSeries,
    forward_transform,
    inverse_transform,
    spectrum_l1,
)
from .tolerances import CALIBRATION

ALGORITHM_ID = "numpy.random.Philox(SeedSequence(entropy=seed, spawn_key=(stream,)))"

_STREAM_CLASS = 0
_STREAM_BAND = 1
_STREAM_PAIR = 2
_STREAM_NOISE = 3


@dataclass(frozen=True)
class GeneratorConfig:
    """Seed, spectral amplitude profile and optional band restriction.

    ``profile`` is either "flat" (unit amplitude) or "gaussian" with scale
    ``sigma``; ``band`` restricts generated content to omega_lo <= |omega| <=
    omega_hi strictly inside (0, omega_max).
    """

    seed: int
    grid: FrequencyGrid
    profile: str = "flat"
    sigma: float = None
    band: tuple = None

    def __post_init__(self) -> None:
        if not isinstance(self.seed, (int, np.integer)) or isinstance(self.seed, bool):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.profile not in ("flat", "gaussian"):
            raise ValueError(f"profile must be 'flat' or 'gaussian', got {self.profile!r}")
        if self.profile == "gaussian":
            if not (isinstance(self.sigma, (int, float)) and self.sigma > 0):
                raise ValueError("gaussian profile needs sigma > 0")
        elif self.sigma is not None:
            raise ValueError("sigma only applies to the gaussian profile")
        if self.band is not None:
            lo, hi = self.band
            if not (0.0 < lo < hi < self.grid.omega_max):
                raise ValueError(
                    f"band must satisfy 0 < lo < hi < omega_max={self.grid.omega_max}"
                )
            object.__setattr__(self, "band", (float(lo), float(hi)))
        object.__setattr__(self, "seed", int(self.seed))


def _generator(cfg: GeneratorConfig, stream: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=cfg.seed, spawn_key=(stream,))
    return np.random.Generator(np.random.Philox(seq))


def _log_amplitude(cfg: GeneratorConfig, omega_abs: np.ndarray) -> np.ndarray:
    if cfg.profile == "flat":
        return np.zeros_like(omega_abs)
    return -(omega_abs**2) / (2.0 * cfg.sigma**2)


def _band_mask(cfg: GeneratorConfig, omega_abs: np.ndarray) -> np.ndarray:
    if cfg.band is None:
        return np.ones(omega_abs.shape, dtype=bool)
    lo, hi = cfg.band
    return (omega_abs >= lo) & (omega_abs <= hi)


def _random_hermitian_phases(grid: FrequencyGrid, rng: np.random.Generator) -> np.ndarray:
    """Unit-modulus hermitian spectrum: e^{i phi} with phi(-w) = -phi(w).

    The omega = 0 node and the unpaired -omega_max node get random signs so
    they stay real.
    """
    n = grid.n
    phases = np.zeros(n)
    phases[1 : n // 2] = rng.uniform(0.0, 2.0 * math.pi, n // 2 - 1)
    phases[n // 2 + 1 :] = -phases[1 : n // 2][::-1]
    unit = np.exp(1j * phases)
    unit[0] = rng.integers(0, 2) * 2.0 - 1.0
    unit[n // 2] = rng.integers(0, 2) * 2.0 - 1.0
    return unit


def _guard_window(grid: FrequencyGrid) -> np.ndarray:
    """Smooth taper confining the signal to the middle half of the window.

    Gaussian-integral ramps from T/16 out to T/4, hard zero beyond.  The
    Gaussian edge makes the window's spectral tail collapse like
    exp(-sigma^2 omega^2 / 2), which keeps taper leakage into the deep
    degeneracy band far below the envelope-projection scale; the hard cut
    happens where the ramp has already fallen to ~1e-9.
    """
    t = np.abs(grid.times())
    t_flat = grid.span / 16.0
    t_zero = grid.span / 4.0
    sigma = (t_zero - t_flat) / 8.6
    mu = 0.5 * (t_flat + t_zero)
    w = 0.5 * erfc((t - mu) / (math.sqrt(2.0) * sigma))
    w[t >= t_zero] = 0.0
    return w / np.max(w)


# generated spectra sit at half the envelope so that taper-induced spectral
# fluctuation stays under the bound almost everywhere; the projection rounds
# then only trim boundary-layer leakage
_HEADROOM = 0.5
_PROJECTION_ROUNDS = 2


def _project_real(spectrum_values: np.ndarray, grid: FrequencyGrid) -> TimeSeries:
    x = inverse_transform(Spectrum(grid, spectrum_values))
    return TimeSeries(grid, x.samples.real.astype(np.complex128))


def _enveloped_member(q: float, c: float, cfg: GeneratorConfig) -> TimeSeries:
    """Envelope-times-random-phase member for a raw (q, c) pair.

    No validation of q: callers admit q > 1 through DegeneracyClass, while
    the negative illustration deliberately feeds q in (0, 1).
    """
    grid = cfg.grid
    rng = _generator(cfg, _STREAM_CLASS)
    om = grid.omegas()
    om_abs = np.abs(om)

    log_env = _log_amplitude(cfg, om_abs) - log_weight(om, q, c)
    log_env[~_band_mask(cfg, om_abs)] = -np.inf
    with np.errstate(under="ignore"):
        env = np.exp(log_env)
    env[0] = 0.0

    raw = _HEADROOM * env * _random_hermitian_phases(grid, rng)
    x = _project_real(raw, grid)
    window = _guard_window(grid)

    # alternate time confinement with the spectral projection; the last step
    # is spectral, which makes the envelope bound and X(0) = 0 exact
    for _ in range(_PROJECTION_ROUNDS):
        tapered = TimeSeries(grid, x.samples * window)
        Xt = forward_transform(tapered).values
        mag = np.abs(Xt)
        with np.errstate(invalid="ignore"):
            scale = np.where(mag > env, env / np.where(mag == 0.0, 1.0, mag), 1.0)
        clipped = Xt * scale
        clipped[0] = 0.0
        x = _project_real(clipped, grid)
    return x


def sample_class_member(cls: DegeneracyClass, cfg: GeneratorConfig) -> TimeSeries:
    """Draw a real signal whose spectrum obeys |X| <= A(omega) e^{-c/|omega|^q}.

    The bound holds exactly at every node (so the class norm is finite by
    construction), X(0) = 0 exactly, and the time support is confined to the
    middle half of the window up to guard residues.
    """
    return _enveloped_member(cls.q, cls.c, cfg)


def sample_bandlimited(omega_bar: float, cfg: GeneratorConfig) -> TimeSeries:
    """Draw a real signal with spectrum support exactly inside |omega| <= omega_bar.

    A band narrower than the frequency step falls back to the fundamental
    node pair, giving a near-sinusoid.  On the grid, finite weighted class
    norms additionally require a gap at the degeneracy point; pass
    ``cfg.band`` to keep the support away from omega = 0 when members of a
    specific class are wanted.
    """
    grid = cfg.grid
    if not (0.0 < omega_bar < grid.omega_max):
        raise ValueError(f"omega_bar must lie in (0, omega_max={grid.omega_max})")
    rng = _generator(cfg, _STREAM_BAND)
    om_abs = np.abs(grid.omegas())
    support = (om_abs <= omega_bar) & _band_mask(cfg, om_abs)
    support[0] = False
    if not np.any(support):
        support = om_abs == grid.delta_omega
    with np.errstate(under="ignore"):
        env = np.where(support, np.exp(_log_amplitude(cfg, om_abs)), 0.0)
    env[0] = 0.0
    # roll the band edge off smoothly so the time taper sheds little mass
    # past the edge (exact support plus compact support cannot both be sharp)
    edge = 0.8 * omega_bar
    roll = (om_abs > edge) & (om_abs <= omega_bar) & support
    env[roll] *= 0.5 * (1.0 + np.cos(math.pi * (om_abs[roll] - edge) / (omega_bar - edge)))

    raw = env * _random_hermitian_phases(grid, rng)
    x = _project_real(raw, grid)
    window = _guard_window(grid)
    for _ in range(_PROJECTION_ROUNDS):
        tapered = TimeSeries(grid, x.samples * window)
        Xt = np.where(support, forward_transform(tapered).values, 0.0)
        Xt[0] = 0.0
        x = _project_real(Xt, grid)
    return x


def counterexample_pair(a: float, cfg: GeneratorConfig):
    """Split one unit-modulus spectrum at |omega| = a into a band-limited part
    and its complement.

    Together the pair carries |X| = 1 at every node; separately the parts are
    supported on complementary node sets, which is what defeats any single
    causal predictor on both at once.  These signals fill the whole time
    window (no taper): the associated experiment is a pure on-grid spectral
    identity and needs no wraparound guard.
    """
    grid = cfg.grid
    if not (0.0 < a < grid.omega_max):
        raise ValueError(f"split frequency must lie in (0, omega_max={grid.omega_max})")
    rng = _generator(cfg, _STREAM_PAIR)
    unit = _random_hermitian_phases(grid, rng)
    inner = np.abs(grid.omegas()) < a
    x1 = _project_real(np.where(inner, unit, 0.0), grid)
    x2 = _project_real(np.where(inner, 0.0, unit), grid)
    return x1, x2


def add_noise(x: TimeSeries, nu: float, cfg: GeneratorConfig):
    """Contaminate with hermitian flat-magnitude noise of exact L1 intensity nu.

    The magnitude is constant over the selected nodes (every node by default,
    or the configured band) and rescaled so that the grid L1 norm of the noise
    spectrum equals nu; returns (contaminated series, noise spectrum).
    """
    if nu < 0:
        raise ValueError("noise intensity must be >= 0")
    grid = x.grid
    if grid != cfg.grid:
        raise ValueError("time series grid does not match generator grid")
    if nu == 0.0:
        return x, Spectrum(grid, np.zeros(grid.n, dtype=np.complex128))
    rng = _generator(cfg, _STREAM_NOISE)
    sel = _band_mask(cfg, np.abs(grid.omegas()))
    count = int(np.count_nonzero(sel))
    values = np.where(sel, nu / (count * grid.delta_omega), 0.0) * _random_hermitian_phases(
        grid, rng
    )
    N = Spectrum(grid, values)
    l1 = spectrum_l1(N)
    N = Spectrum(grid, N.values * (nu / l1))
    eta = inverse_transform(N)
    return TimeSeries(grid, x.samples + eta.samples.real), N


def class_norm(x: TimeSeries, cls: DegeneracyClass) -> float:
    """Grid estimate of sup |X(i*omega)| * e^{c/|omega|^q}; +inf for non-members.

    Spectral values at or below the roundoff floor (relative to the spectral
    peak, see the calibration table) are treated as exact zeros: a transform
    recomputed from finite-precision samples carries absolute roundoff at
    every node, and the weight near the degeneracy point is so large that
    evaluating it on roundoff values would flag every representable signal.
    Content at the degeneracy node itself above that floor exits the class
    immediately.  Evaluated through logarithms; the result may round to +inf
    for signals far outside the class, which is the honest extended-real
    answer.
    """
    X = forward_transform(x).values
    mags = np.abs(X)
    floor = max(
        CALIBRATION["class_zero_floor"],
        CALIBRATION["class_dc_floor_rel"] * float(np.max(mags)),
    )
    if mags[0] > floor:
        return math.inf
    live = mags > floor
    live[0] = False
    if not np.any(live):
        return 0.0
    om = x.grid.omegas()
    total = np.log(mags[live]) + log_weight(om[live], cls.q, cls.c)
    with np.errstate(over="ignore"):
        return float(np.exp(np.max(total)))


def make_class_ensemble(cls: DegeneracyClass, cfg: GeneratorConfig, size: int):
    """Draw ``size`` independent class members, seeds derived as cfg.seed + i."""
    if size < 1:
        raise ValueError("ensemble size must be >= 1")
    return [
        sample_class_member(cls, replace(cfg, seed=cfg.seed + i)) for i in range(size)
    ]
