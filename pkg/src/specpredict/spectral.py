"""Uniform-grid discretization of continuous-time Fourier analysis.

The continuous transform pair

    X(i*omega) = integral e^{-i*omega*t} x(t) dt
    x(t)       = (1/2pi) integral e^{i*omega*t} X(i*omega) d(omega)

is approximated on a uniform time grid with the origin at the grid centre,
so that both past (t < 0) and future (t > 0) samples exist on-grid.  The
frequency nodes are kept in natural (fast-transform) order internally;
``to_centered`` / ``to_natural`` are the only reindexing helpers and own the
conversion to the centered reporting order
{-omega_max, ..., -d_omega, 0, d_omega, ..., omega_max - d_omega}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .tolerances import CALIBRATION

TWO_PI = 2.0 * math.pi


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


def to_centered(values: np.ndarray) -> np.ndarray:
    """Reorder natural (fast-transform) node order to centered order."""
    return np.fft.fftshift(values)


def to_natural(values: np.ndarray) -> np.ndarray:
    """Reorder centered node order back to natural order."""
    return np.fft.ifftshift(values)


@dataclass(frozen=True)
class FrequencyGrid:
    """Pairing of a uniform time grid with its uniform angular-frequency grid.

    ``n`` samples ``delta_t`` apart span ``T = n*delta_t``; the conjugate
    frequency nodes are ``delta_omega = 2*pi/T`` apart and cover
    ``[-omega_max, omega_max)`` with ``omega_max = pi/delta_t``.  Time nodes
    are ``t_j = (j - n/2)*delta_t``.
    """

    n: int
    delta_t: float

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
            raise ValueError(f"sample count must be an integer, got {n!r}")
        if n < 8 or not _is_power_of_two(int(n)):
            raise ValueError(f"sample count must be a power of two >= 8, got {n}")
        dt = self.delta_t
        if not (isinstance(dt, (int, float, np.floating)) and math.isfinite(dt) and dt > 0):
            raise ValueError(f"time step must be a positive finite number, got {dt!r}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "delta_t", float(dt))

    @property
    def span(self) -> float:
        """Total time span T = n * delta_t."""
        return self.n * self.delta_t

    @property
    def delta_omega(self) -> float:
        """Frequency step 2*pi / T."""
        return TWO_PI / self.span

    @property
    def omega_max(self) -> float:
        """Largest resolvable angular frequency pi / delta_t."""
        return math.pi / self.delta_t

    def times(self) -> np.ndarray:
        """Time nodes t_j = (j - n/2) * delta_t, j = 0..n-1."""
        return (np.arange(self.n) - self.n // 2) * self.delta_t

    def omegas(self) -> np.ndarray:
        """Angular-frequency nodes in natural (fast-transform) order."""
        return TWO_PI * np.fft.fftfreq(self.n, d=self.delta_t)

    def omegas_centered(self) -> np.ndarray:
        """Angular-frequency nodes in centered reporting order."""
        return to_centered(self.omegas())

    def alternating_signs(self) -> np.ndarray:
        """(-1)^k phase factors tying the centered time origin to natural order."""
        signs = np.ones(self.n)
        signs[1::2] = -1.0
        return signs


def make_grid(n: int, delta_t: float) -> FrequencyGrid:
    """Construct a grid, rejecting non-power-of-two n and nonpositive steps."""
    return FrequencyGrid(n, delta_t)


def _as_complex(values, n: int, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.complex128)
    if arr.shape != (n,):
        raise ValueError(f"{what} must have shape ({n},), got {arr.shape}")
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Sampled signal on a grid; index j holds the value at t_j = (j - n/2)*delta_t."""

    grid: FrequencyGrid
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", _as_complex(self.samples, self.grid.n, "samples"))

    @property
    def is_real(self) -> bool:
        mag = np.max(np.abs(self.samples))
        if mag == 0.0:
            return True
        return float(np.max(np.abs(self.samples.imag))) <= CALIBRATION["real_imag_rel"] * mag

    def real_samples(self) -> np.ndarray:
        return self.samples.real.copy()


@dataclass(frozen=True)
class Spectrum:
    """Sampled transform X(i*omega_k) on a grid, natural node order."""

    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _as_complex(self.values, self.grid.n, "values"))

    @property
    def is_hermitian(self) -> bool:
        mag = np.max(np.abs(self.values))
        if mag == 0.0:
            return True
        idx = (-np.arange(self.grid.n)) % self.grid.n
        defect = np.max(np.abs(self.values - np.conj(self.values[idx])))
        return float(defect) <= CALIBRATION["hermitian_rel"] * mag


def forward_transform(x: TimeSeries) -> Spectrum:
    """Riemann approximation of the continuous Fourier integral.

    X(i*omega_k) ~ delta_t * sum_j e^{-i*omega_k*t_j} x(t_j), computed with a
    fast transform plus the (-1)^k phase correction for the centered origin.
    """
    grid = x.grid
    values = grid.delta_t * grid.alternating_signs() * np.fft.fft(x.samples)
    return Spectrum(grid, values)


def inverse_transform(X: Spectrum) -> TimeSeries:
    """Inverse of :func:`forward_transform`; exact round trip up to rounding."""
    grid = X.grid
    samples = np.fft.ifft(grid.alternating_signs() * X.values) / grid.delta_t
    return TimeSeries(grid, samples)


def norm(x: TimeSeries, p) -> float:
    """Grid norm: p=2 gives sqrt(delta_t * sum |x|^2); p=inf gives max |x|."""
    mags = np.abs(x.samples)
    if p == 2:
        return float(math.sqrt(x.grid.delta_t) * np.linalg.norm(mags))
    if p in ("inf", "sup") or (isinstance(p, (int, float)) and math.isinf(p)):
        return float(np.max(mags)) if mags.size else 0.0
    raise ValueError(f"p must be 2 or inf, got {p!r}")


def spectrum_l1(X: Spectrum) -> float:
    """delta_omega * sum_k |X(i*omega_k)|, the grid estimate of the L1 norm."""
    return float(X.grid.delta_omega * np.sum(np.abs(X.values)))


def hermitian_symmetrize(X: Spectrum) -> Spectrum:
    """Project onto conjugate-symmetric spectra: (X(i*w) + conj(X(-i*w))) / 2."""
    idx = (-np.arange(X.grid.n)) % X.grid.n
    return Spectrum(X.grid, 0.5 * (X.values + np.conj(X.values[idx])))
