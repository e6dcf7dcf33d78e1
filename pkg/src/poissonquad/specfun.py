"""Special functions needed by the Poisson kernels.

Bessel functions accept scalars or arrays and return the same shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BesselOverflowError, ConvergenceDomainError, NonConvergenceError, ParameterDomainError

I_SWITCH = kernels.vectorized.I_SWITCH
J_SERIES_MAX = kernels.vectorized.J_SERIES_MAX

F4_GUARD_DELTA = 1e-3
F4_DEFAULT_TOL = 1e-12
F4_DEFAULT_MAX_TERMS = 10**6

_LOG_DBL_MAX = math.log(np.finfo(float).max)


def log_gamma(x: float) -> float:
    if not x > 0.0:
        raise ParameterDomainError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def _prepare(alpha, x, name):
    if not alpha > -1.0:
        raise ParameterDomainError(f"{name} requires alpha > -1, got {alpha}")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(np.isnan(arr)):
        raise ParameterDomainError(f"{name} requires x >= 0")
    return arr


def bessel_ie(alpha: float, x):
    """Exponentially scaled modified Bessel function ``exp(-x) I_alpha(x)``."""
    arr = _prepare(alpha, x, "bessel_ie")
    out = kernels.bessel_ie(alpha, arr.ravel()).reshape(arr.shape)
    return out if out.ndim else float(out)


def log_bessel_i(alpha: float, x):
    arr = np.asarray(x, dtype=float)
    with np.errstate(divide="ignore"):
        return np.log(bessel_ie(alpha, arr)) + arr


def bessel_i(alpha: float, x):
    """Modified Bessel function of the first kind ``I_alpha(x)`` for x >= 0.

    Raises :class:`BesselOverflowError` (carrying ``log I``) where the value
    exceeds double range, roughly x > 713.
    """
    arr = _prepare(alpha, x, "bessel_i")
    ie = kernels.bessel_ie(alpha, arr.ravel()).reshape(arr.shape)
    with np.errstate(divide="ignore"):
        logv = np.log(ie) + arr
    if np.any(logv > _LOG_DBL_MAX):
        worst = float(np.max(logv))
        raise BesselOverflowError(f"I_{alpha}(x) overflows double precision (log value {worst:.6g})", worst)
    out = ie * np.exp(arr)
    return out if out.ndim else float(out)


def bessel_j(alpha: float, x):
    """Bessel function of the first kind ``J_alpha(x)`` for x >= 0."""
    arr = _prepare(alpha, x, "bessel_j")
    out = kernels.bessel_j(alpha, arr.ravel()).reshape(arr.shape)
    return out if out.ndim else float(out)


def _nonpositive_integer(v):
    return v <= 0.0 and v == math.floor(v)


@dataclass(frozen=True)
class F4Params:
    a: float
    b: float
    c: float
    d: float
    xi: float
    eta: float
    tol: float = F4_DEFAULT_TOL
    max_terms: int = F4_DEFAULT_MAX_TERMS
    delta: float = F4_GUARD_DELTA

    def __post_init__(self):
        if _nonpositive_integer(self.c) or _nonpositive_integer(self.d):
            raise ParameterDomainError(f"F4 lower parameters must avoid 0, -1, -2, ...; got c={self.c}, d={self.d}")
        if not self.tol > 0.0 or not self.max_terms > 0:
            raise ParameterDomainError("F4 tol and max_terms must be positive")

    @property
    def radius(self) -> float:
        return math.sqrt(abs(self.xi)) + math.sqrt(abs(self.eta))


def appell_f4(p: F4Params) -> float:
    """Appell's fourth hypergeometric function F4(a, b; c, d; xi, eta).

    The double series is summed along anti-diagonals m + n = k. Summation
    stops once the last anti-diagonal and a geometric tail estimate from the
    last two both fall below ``tol * |partial sum|``.
    """
    if p.radius > 1.0 - p.delta:
        raise ConvergenceDomainError(
            f"sqrt|xi| + sqrt|eta| = {p.radius:.6g} exceeds 1 - {p.delta:g} (xi={p.xi}, eta={p.eta})"
        )
    value, terms, converged = kernels.f4_series(p.a, p.b, p.c, p.d, p.xi, p.eta, p.tol, p.max_terms)
    if not converged:
        raise NonConvergenceError(f"F4 series not converged after {terms} terms (xi={p.xi}, eta={p.eta})")
    return value
