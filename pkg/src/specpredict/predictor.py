"""Causal predictor transfer functions for anti-causal convolutions.

For a kernel with poles {a_j} and sharpness parameters gamma > 0, r > 0, the
correcting factor per pole is

    V_j(z) = 1 - exp(-gamma * (z - a_j) / (z + gamma^{-r})),

an entire expression in z on the closed right half-plane (the denominator
root -gamma^{-r} sits strictly in the left half-plane).  The product
V = prod_j V_j vanishes at every pole a_j, so K_hat = V * K extends
holomorphically to the right half-plane: its inverse transform is supported
on t >= 0 and acts as a causal predictor of the anti-causal convolution.

Near omega = 0 the factor exponent has real part up to gamma^{r+1} * a_j, so
|V| can exceed the double-precision range astronomically.  All magnitudes
are therefore carried in log-magnitude/phase form; stored complex values are
clamped at exp(700) with a saturation flag, and every low-band check works
entirely in the log domain.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .degeneracy import DegeneracyClass, log_weight
from .kernels import AnticausalKernel, transfer
from .spectral import (
    FrequencyGrid,
    Spectrum,
    TimeSeries,
    forward_transform,
    inverse_transform,
)
from .tolerances import CALIBRATION

_CLAMP_LOG = CALIBRATION["v_overflow_clamp_log"]
# second clamp for the product with K, kept slightly under the exp overflow edge
_VALUE_LOG_MAX = 705.0


def _check_sharpness(gamma: float, r: float) -> None:
    if not (isinstance(gamma, (int, float)) and math.isfinite(gamma) and gamma > 0):
        raise ValueError(f"gamma must be finite and > 0, got {gamma!r}")
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r > 0):
        raise ValueError(f"r must be finite and > 0, got {r!r}")


def factor_exponent(z, a: float, gamma: float, r: float) -> np.ndarray:
    """The exponent -gamma * (z - a) / (z + gamma^{-r}) as one complex division."""
    alpha = gamma ** (-r)
    return -gamma * (np.asarray(z, dtype=np.complex128) - a) / (np.asarray(z) + alpha)


def eval_v_factor(z, a: float, gamma: float, r: float):
    """Evaluate V_j(z) = 1 - exp(-gamma (z - a)/(z + gamma^{-r})) directly.

    Valid on the closed right half-plane and the imaginary axis.  The
    exponential is entire, so there is no branch ambiguity; where its real
    part exceeds the double range the result overflows to inf (the log-domain
    path in :func:`build_predictor` is the clamped alternative).
    """
    _check_sharpness(gamma, r)
    if not (math.isfinite(a) and a > 0):
        raise ValueError(f"pole must be finite and > 0, got {a!r}")
    with np.errstate(over="ignore", under="ignore"):
        out = 1.0 - np.exp(factor_exponent(z, a, gamma, r))
    if np.isscalar(z) or np.asarray(z).shape == ():
        return complex(out)
    return out


def _factor_logpolar(omega: np.ndarray, a: float, gamma: float, r: float):
    """(log|V_j|, arg V_j) at z = i*omega, stable for huge exponents.

    Where Re w <= 690 the factor 1 - e^w is formed exactly; beyond that
    1 - e^w = -e^w (1 - e^{-w}) gives log magnitude Re w and phase Im w + pi
    up to an e^{-Re w} correction far below double rounding.
    """
    w = factor_exponent(1j * omega, a, gamma, r)
    wr = w.real
    logmag = np.empty_like(wr)
    phase = np.empty_like(wr)
    exact = wr <= 690.0
    with np.errstate(under="ignore", divide="ignore"):
        f = 1.0 - np.exp(w[exact])
        logmag[exact] = np.log(np.abs(f))
        phase[exact] = np.angle(f)
    big = ~exact
    logmag[big] = wr[big]
    phase[big] = w.imag[big] + math.pi
    return logmag, phase


def v_logpolar(omega: np.ndarray, kernel: AnticausalKernel, gamma: float, r: float):
    """(log|V|, arg V) of the full product at z = i*omega."""
    logmag = np.zeros(np.shape(omega))
    phase = np.zeros(np.shape(omega))
    for a in kernel.poles:
        lm, ph = _factor_logpolar(np.asarray(omega, dtype=float), a, gamma, r)
        logmag += lm
        phase += ph
    return logmag, phase


def v_minus_one(omega, kernel: AnticausalKernel, gamma: float, r: float) -> np.ndarray:
    """V(i*omega) - 1 with full relative accuracy when V is close to 1.

    Each factor deviation f_j = -e^{w_j} is exact; when every |f_j| is tiny
    the product expansion collapses to sum f_j, which avoids the catastrophic
    1 - 1 cancellation of forming V first.
    """
    om = np.asarray(omega, dtype=float)
    with np.errstate(over="ignore", under="ignore"):
        f = np.stack(
            [-np.exp(factor_exponent(1j * om, a, gamma, r)) for a in kernel.poles]
        )
    tiny = np.all(np.abs(f) < 1e-6, axis=0)
    with np.errstate(invalid="ignore", over="ignore"):
        direct = np.prod(1.0 + f, axis=0) - 1.0
    linear = np.sum(f, axis=0)
    return np.where(tiny, linear, direct)


@dataclass(frozen=True)
class PredictorTransfer:
    """The sampled causal predictor K_hat = V * K with its diagnostics.

    ``v_values`` and ``khat_values`` are magnitude-clamped at exp(700) where
    the log magnitude saturates (mask in ``saturated``); the unclamped log
    magnitudes and phases ride along for log-domain arithmetic.
    ``kappa_sup`` is the grid max of |khat_values| (an under-estimate of the
    true sup, consistent with the grid resolution); ``omega_threshold`` is
    the degeneracy-band edge sqrt(max_j a_j * gamma^{-r}).
    """

    kernel: AnticausalKernel
    gamma: float
    r: float
    grid: FrequencyGrid
    v_values: np.ndarray
    khat_values: np.ndarray
    khat_time: TimeSeries
    kappa_sup: float
    omega_threshold: float
    v_log_mag: np.ndarray
    v_phase: np.ndarray
    khat_log_mag: np.ndarray
    khat_phase: np.ndarray
    saturated: np.ndarray

    @property
    def any_saturated(self) -> bool:
        return bool(np.any(self.saturated))


def omega_threshold(kernel: AnticausalKernel, gamma: float, r: float) -> float:
    """Degeneracy-band edge sqrt(max_j a_j * gamma^{-r})."""
    return math.sqrt(kernel.max_pole * gamma ** (-r))


def build_predictor(
    kernel: AnticausalKernel, gamma: float, r: float, grid: FrequencyGrid
) -> PredictorTransfer:
    """Assemble V, K_hat = V*K, the causal time kernel and the gain figures.

    Admissibility of r against a signal class (r > 2/(q-1)) is a property of
    experiments, not of the transfer itself, and is checked by callers that
    pair the predictor with a class.
    """
    _check_sharpness(gamma, r)
    om = grid.omegas()
    v_log, v_ph = v_logpolar(om, kernel, gamma, r)
    # the unpaired half-rate node stands for both +-omega_max; averaging the
    # conjugate pair keeps V, and hence K_hat, conjugate-symmetric on-grid
    ny = grid.n // 2
    with np.errstate(divide="ignore"):
        ny_real = math.exp(min(v_log[ny], _CLAMP_LOG)) * math.cos(v_ph[ny])
        v_log[ny] = np.log(abs(ny_real)) if ny_real != 0.0 else -np.inf
    v_ph[ny] = 0.0 if ny_real >= 0.0 else math.pi

    sat = v_log > _CLAMP_LOG
    v_vals = np.exp(np.minimum(v_log, _CLAMP_LOG)) * np.exp(1j * v_ph)

    K = transfer(kernel, grid)
    with np.errstate(divide="ignore"):
        k_log = np.log(np.abs(K.values))
    k_ph = np.angle(K.values)

    khat_log = v_log + k_log
    khat_ph = v_ph + k_ph
    with np.errstate(under="ignore", over="ignore", invalid="ignore"):
        khat_vals = v_vals * K.values
        overflow = ~np.isfinite(khat_vals)
        if np.any(overflow):
            khat_vals[overflow] = np.exp(
                np.minimum(khat_log[overflow], _VALUE_LOG_MAX)
            ) * np.exp(1j * khat_ph[overflow])
    sat = sat | overflow

    khat_time = inverse_transform(Spectrum(grid, khat_vals))
    return PredictorTransfer(
        kernel=kernel,
        gamma=float(gamma),
        r=float(r),
        grid=grid,
        v_values=v_vals,
        khat_values=khat_vals,
        khat_time=khat_time,
        kappa_sup=float(np.max(np.abs(khat_vals))),
        omega_threshold=omega_threshold(kernel, gamma, r),
        v_log_mag=v_log,
        v_phase=v_ph,
        khat_log_mag=khat_log,
        khat_phase=khat_ph,
        saturated=sat,
    )


def predictor_to_json(pt: PredictorTransfer) -> str:
    """Serialize the defining parameters; the sampled arrays are rebuilt."""
    return json.dumps(
        {
            "kernel": {"poles": list(pt.kernel.poles), "numerator": list(pt.kernel.numerator)},
            "gamma": pt.gamma,
            "r": pt.r,
            "grid": {"n": pt.grid.n, "delta_t": pt.grid.delta_t},
        },
        sort_keys=True,
    )


def predictor_from_json(text: str) -> PredictorTransfer:
    obj = json.loads(text)
    unknown = set(obj) - {"kernel", "gamma", "r", "grid"}
    if unknown:
        raise ValueError(f"unknown predictor fields: {sorted(unknown)}")
    kernel = AnticausalKernel(
        tuple(obj["kernel"]["poles"]), tuple(obj["kernel"].get("numerator", [1.0]))
    )
    grid = FrequencyGrid(obj["grid"]["n"], obj["grid"]["delta_t"])
    return build_predictor(kernel, obj["gamma"], obj["r"], grid)


def predict(pt: PredictorTransfer, x: TimeSeries) -> TimeSeries:
    """Causal prediction y_hat = inverse(K_hat * X); same guard rules as
    :func:`.kernels.apply_anticausal` (circular product, middle-half support).
    """
    if x.grid != pt.grid:
        raise ValueError("time series grid does not match predictor grid")
    X = forward_transform(x)
    return inverse_transform(Spectrum(pt.grid, pt.khat_values * X.values))


def causality_defect(pt: PredictorTransfer) -> float:
    """Energy share of the predictor kernel at t < 0; 0 certifies causal support.

    Computed on sup-normalized samples so saturated kernels do not overflow
    the squares; the ratio is scale invariant.
    """
    s = np.abs(pt.khat_time.samples)
    peak = np.max(s)
    if peak == 0.0:
        return 0.0
    s = s / peak
    t = pt.grid.times()
    total = float(np.sum(s * s))
    past = float(np.sum((s * s)[t < 0.0]))
    return past / total


@dataclass(frozen=True)
class LemmaReport:
    """Grid evaluation of the predictor-factor bounds for one (gamma, class).

    ``pass_positivity``/``pass_factor_dev`` cover every node above the band
    edge for every pole; ``tail_dev_max`` is max |V - 1| over |omega| >=
    omega_floor; ``pass_low_band`` is the weighted low-band bound
    log|V| <= c/|omega|^q on the nodes strictly inside the band (vacuously
    true when the band falls below the grid resolution; ``low_band_nodes``
    records how many nodes were actually checked).
    """

    gamma: float
    r: float
    omega_threshold: float
    pass_positivity: bool
    pass_factor_dev: bool
    tail_dev_max: float
    omega_floor: float
    pass_low_band: bool
    low_band_nodes: int
    low_band_margin: float

    @property
    def pass_high_band(self) -> bool:
        return self.pass_positivity and self.pass_factor_dev


def _low_band_holds(
    kernel: AnticausalKernel,
    cls: DegeneracyClass,
    gamma: float,
    r: float,
    grid: FrequencyGrid,
):
    """Check log|V| <= c/|omega|^q on grid nodes with 0 < |omega| <= threshold.

    Returns (holds, node_count, worst_margin); margin is max(log|V| - log h),
    -inf when the band contains no nonzero node.
    """
    om = grid.omegas()
    thr = omega_threshold(kernel, gamma, r)
    band = (np.abs(om) > 0.0) & (np.abs(om) <= thr)
    count = int(np.count_nonzero(band))
    if count == 0:
        return True, 0, -math.inf
    v_log, _ = v_logpolar(om[band], kernel, gamma, r)
    margin = float(np.max(v_log - log_weight(om[band], cls.q, cls.c)))
    return margin <= CALIBRATION["lemma_iv_slack"], count, margin


def lemma_check(
    pt: PredictorTransfer, cls: DegeneracyClass, omega_floor: float = 0.5
) -> LemmaReport:
    """Evaluate the three checkable factor bounds over the grid.

    (a) above the band edge, Re((i*omega - a_j)/(i*omega + gamma^{-r})) > 0
    and |V_j(i*omega) - 1| < 1 for every pole; (b) max |V - 1| over
    |omega| >= omega_floor, the quantity that must shrink as gamma grows;
    (c) the weighted low-band bound |V| <= exp(c/|omega|^q) inside the band.
    """
    if not (0 < omega_floor < pt.grid.omega_max):
        raise ValueError(f"omega_floor must lie in (0, omega_max={pt.grid.omega_max})")
    grid, gamma, r = pt.grid, pt.gamma, pt.r
    om = grid.omegas()
    alpha = gamma ** (-r)
    thr = pt.omega_threshold
    outside = np.abs(om) > thr

    pass_pos = True
    pass_dev = True
    for a in pt.kernel.poles:
        re_ratio = (om[outside] ** 2 - a * alpha) / (om[outside] ** 2 + alpha**2)
        pass_pos = pass_pos and bool(np.all(re_ratio > 0.0))
        with np.errstate(under="ignore"):
            dev = np.abs(np.exp(factor_exponent(1j * om[outside], a, gamma, r)))
        pass_dev = pass_dev and bool(np.all(dev < 1.0))

    tail = np.abs(om) >= omega_floor
    tail_dev = float(np.max(np.abs(v_minus_one(om[tail], pt.kernel, gamma, r))))

    holds, count, margin = _low_band_holds(pt.kernel, cls, gamma, r, grid)
    return LemmaReport(
        gamma=gamma,
        r=r,
        omega_threshold=thr,
        pass_positivity=pass_pos,
        pass_factor_dev=pass_dev,
        tail_dev_max=tail_dev,
        omega_floor=float(omega_floor),
        pass_low_band=holds,
        low_band_nodes=count,
        low_band_margin=margin,
    )


def find_gamma0(
    kernel: AnticausalKernel,
    cls: DegeneracyClass,
    r: float,
    grid: FrequencyGrid,
    bracket=(0.5, 2000.0),
    iterations: int = 60,
) -> float:
    """Bisect for the smallest gamma at which the low-band bound holds.

    Assumes the pass region is upward closed in gamma (which the construction
    guarantees for admissible r).  If the bound already holds at the bracket
    floor, the floor is returned; if it fails at the ceiling, a ValueError
    reports that no threshold exists in the bracket.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (0 < lo < hi):
        raise ValueError("bracket must satisfy 0 < lo < hi")

    def holds(g: float) -> bool:
        return _low_band_holds(kernel, cls, g, r, grid)[0]

    if holds(lo):
        return lo
    if not holds(hi):
        raise ValueError(f"low-band bound fails at the bracket ceiling {hi}")
    for _ in range(iterations):
        mid = math.sqrt(lo * hi)
        if holds(mid):
            hi = mid
        else:
            lo = mid
    return hi


def _logsumexp(values: np.ndarray) -> float:
    a = np.asarray(values, dtype=float)
    if a.size == 0:
        return -math.inf
    m = float(np.max(a))
    if not math.isfinite(m):
        return m
    with np.errstate(under="ignore"):
        return m + math.log(float(np.sum(np.exp(a - m))))


def log_norm2(log_mag: np.ndarray, delta_omega: float) -> float:
    """log of sqrt(delta_omega * sum exp(2*log_mag)): grid L2 norm in log form."""
    return 0.5 * (_logsumexp(2.0 * np.asarray(log_mag)) + math.log(delta_omega))


def _scaled_inner_product(log_a, phase_a, log_b, phase_b):
    """(log scale L, complex S) with sum conj(A)B = e^L * S."""
    terms = np.asarray(log_a) + np.asarray(log_b)
    finite = np.isfinite(terms)
    if not np.any(finite):
        return -math.inf, 0.0 + 0.0j
    L = float(np.max(terms[finite]))
    with np.errstate(under="ignore"):
        weights = np.where(finite, np.exp(np.where(finite, terms, -np.inf) - L), 0.0)
    S = np.sum(weights * np.exp(1j * (np.asarray(phase_b) - np.asarray(phase_a))))
    return L, complex(S)


def orthogonality_residual(pt: PredictorTransfer) -> float:
    """Normalized grid witness of the causal/anti-causal orthogonality.

    |delta_omega * sum conj(K) K_hat| / (||K||_2 ||K_hat||_2), evaluated in
    the log domain so saturated nodes cannot overflow; the normalization
    makes the grid spacing cancel.  0 for an identically zero predictor.
    """
    K = transfer(pt.kernel, pt.grid)
    with np.errstate(divide="ignore"):
        k_log = np.log(np.abs(K.values))
    k_ph = np.angle(K.values)
    kh_log, kh_ph = pt.khat_log_mag, pt.khat_phase
    if not np.any(np.isfinite(kh_log)):
        return 0.0

    L, S = _scaled_inner_product(k_log, k_ph, kh_log, kh_ph)
    if abs(S) == 0.0:
        return 0.0
    num_log = L + math.log(abs(S))
    den_log = 0.5 * _logsumexp(2.0 * k_log) + 0.5 * _logsumexp(2.0 * kh_log)
    with np.errstate(over="ignore"):
        return float(np.exp(num_log - den_log))
