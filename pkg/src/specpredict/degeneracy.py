"""Degeneracy classes: the weight exp(c/|omega|^q) and its parameter domain."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DegeneracyClass:
    """Parameters (q, c) of the signal class with a spectral zero at omega = 0.

    Membership requires |X(i*omega)| * exp(c/|omega|^q) to stay bounded, i.e.
    the transform must vanish at the origin at rate exp(-c/|omega|^q).  Only
    q > 1 with c > 0 is admitted; q in (0, 1) is the provably unpredictable
    regime and q = 1 is left undecided, so both are rejected here.
    """

    q: float
    c: float

    def __post_init__(self) -> None:
        if not (isinstance(self.q, (int, float)) and math.isfinite(self.q) and self.q > 1):
            raise ValueError(f"q must be a finite number > 1, got {self.q!r}")
        if not (isinstance(self.c, (int, float)) and math.isfinite(self.c) and self.c > 0):
            raise ValueError(f"c must be a finite number > 0, got {self.c!r}")
        object.__setattr__(self, "q", float(self.q))
        object.__setattr__(self, "c", float(self.c))

    @property
    def min_sharpness_exponent(self) -> float:
        """Smallest admissible predictor exponent, 2/(q-1); r must exceed it."""
        return 2.0 / (self.q - 1.0)


def log_weight(omega, q: float, c: float) -> np.ndarray:
    """log of the class weight, c/|omega|^q; +inf at the degeneracy point."""
    om = np.abs(np.asarray(omega, dtype=float))
    out = np.full(om.shape, np.inf)
    nz = om > 0.0
    out[nz] = c * om[nz] ** (-q)
    return out


def weight_h(omega, cls: DegeneracyClass) -> np.ndarray:
    """The class weight exp(c/|omega|^q); +inf sentinel at omega = 0.

    Evaluated through its logarithm; overflow saturates to +inf, which is the
    honest extended-real value of the weight near the origin.
    """
    lw = log_weight(omega, cls.q, cls.c)
    with np.errstate(over="ignore"):
        return np.exp(lw)
