"""Independent slow-path oracles for the fast implementations.

Everything here deliberately avoids the fast-transform machinery: transforms
are O(n^2) matrix summations of the defining Riemann sums, convolutions are
direct linear (non-circular) summations, and continuous-domain references use
adaptive quadrature.  Tests compare the library's fast paths against these.
"""

import math

import numpy as np


def dft_direct(samples: np.ndarray, grid) -> np.ndarray:
    """O(n^2) Riemann sum delta_t * sum_j e^{-i w_k t_j} x_j, no FFT."""
    t = grid.times()
    om = grid.omegas()
    M = np.exp(-1j * np.outer(om, t))
    return grid.delta_t * (M @ samples)


def idft_direct(values: np.ndarray, grid) -> np.ndarray:
    """O(n^2) inverse sum (delta_omega/2pi) * sum_k e^{i w_k t_j} X_k."""
    t = grid.times()
    om = grid.omegas()
    M = np.exp(1j * np.outer(t, om))
    return (grid.delta_omega / (2.0 * math.pi)) * (M @ values)


def linear_convolve(kernel_samples: np.ndarray, x_samples: np.ndarray, grid) -> np.ndarray:
    """O(n^2) linear convolution y_i = delta_t * sum_j k(t_i - t_j) x_j.

    The kernel is known on the grid window only; arguments outside it count
    as zero, which is what distinguishes this from the circular fast path.
    """
    n = grid.n
    idx = np.add.outer(np.arange(n), -np.arange(n)) + n // 2
    valid = (idx >= 0) & (idx <= n - 1)
    ker = np.where(valid, kernel_samples[np.clip(idx, 0, n - 1)], 0.0)
    return grid.delta_t * (ker @ x_samples)


def anticausal_transform_quadrature(pole: float, omega: float, grid) -> complex:
    """Trapezoid quadrature of integral_{-inf}^0 e^{-i w t} (-e^{pole * t}) dt.

    The integrand is restricted to t <= 0 so the jump node at t = 0 receives
    its proper endpoint half-weight.
    """
    t = grid.times()
    past = t <= 0.0
    integrand = -np.exp(pole * t[past]) * np.exp(-1j * omega * t[past])
    return complex(np.trapezoid(integrand, dx=grid.delta_t))
