"""Gauss nodes, weights and orthonormal sample matrices (Golub-Welsch)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import InsufficientNodesError, ParameterDomainError
from .orthopoly import PolynomialFamily, family_constants, symmetric_coeffs


@dataclass(frozen=True)
class JacobiMatrix:
    diag: np.ndarray
    offdiag: np.ndarray

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)


@dataclass(frozen=True)
class QuadratureRule:
    """Order-N Gauss rule; ``U[n, k] = u_n(x_k)`` (row = degree, column = node)."""

    family: PolynomialFamily
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    U: np.ndarray

    @property
    def center_index(self) -> int:
        """0-based index of the middle node; requires odd N."""
        if self.n % 2 == 0:
            raise ParameterDomainError(f"center row needs odd N, got N={self.n}")
        return (self.n - 1) // 2


def _check_n(N):
    if int(N) != N or N < 1:
        raise ParameterDomainError(f"N must be a positive integer, got {N}")
    return int(N)


def jacobi_matrix(family: PolynomialFamily, N: int) -> JacobiMatrix:
    N = _check_n(N)
    diag, off = symmetric_coeffs(family, N)
    return JacobiMatrix(diag, off[: N - 1])


def _newton_polish(x, diag, off):
    # one Newton step on q_N using the symmetric recurrence and its derivative
    N = diag.size
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    dprev = np.zeros_like(x)
    dcur = np.zeros_like(x)
    for k in range(N):
        nxt = (x - diag[k]) * cur
        dnxt = (x - diag[k]) * dcur + cur
        if k > 0:
            nxt -= off[k - 1] * prev
            dnxt -= off[k - 1] * dprev
        prev, cur = cur, nxt / off[k]
        dprev, dcur = dcur, dnxt / off[k]
    with np.errstate(all="ignore"):
        step = cur / dcur
    # accept only tiny finite corrections; large or non-finite ones mean the
    # recurrence over/underflowed far outside the oscillatory region
    ok = np.isfinite(step) & (np.abs(step) <= 1e-9 * np.maximum(1.0, np.abs(x)))
    return np.where(ok, x - step, x)


@lru_cache(maxsize=64)
def _rule(family, N, polish):
    diag, off = symmetric_coeffs(family, N)
    x, Z = kernels.tql_implicit(diag, off[: N - 1], want_vectors=True)
    if polish:
        x = _newton_polish(x, diag, off)
    w = family.mu0 * Z[0] ** 2
    for arr in (x, w, Z):
        arr.setflags(write=False)
    return QuadratureRule(family, N, x, w, Z)


def quadrature_rule(family: PolynomialFamily, N: int, polish: bool = True) -> QuadratureRule:
    """Nodes, Gauss weights and orthonormal eigenvector matrix for order N."""
    return _rule(family, _check_n(N), bool(polish))


def zeros(family: PolynomialFamily, N: int, polish: bool = True) -> np.ndarray:
    return quadrature_rule(family, N, polish).nodes


def gauss_weights(family: PolynomialFamily, N: int) -> np.ndarray:
    return quadrature_rule(family, N).weights


def eigenvalues(family: PolynomialFamily, N: int) -> np.ndarray:
    """Zeros of P_N without eigenvectors (cheaper for large N)."""
    N = _check_n(N)
    diag, off = symmetric_coeffs(family, N)
    x, _ = kernels.tql_implicit(diag, off[: N - 1], want_vectors=False)
    return x


@dataclass(frozen=True)
class SpacingDiagnostics:
    mean_gap: float
    max_dev: float
    lambda_N: float
    gaps: np.ndarray


def spacing_diagnostics(family: PolynomialFamily, N: int, window: tuple[float, float]) -> SpacingDiagnostics:
    """Gaps of consecutive nodes, mapped through sigma, inside ``window``."""
    c, d = window
    lo, hi = family.interval
    if not (lo < c < d < hi):
        raise ParameterDomainError(f"window {window} must lie strictly inside {family.interval}")
    consts = family_constants(family)
    x = eigenvalues(family, N)
    inside = x[(x > c) & (x < d)]
    if inside.size < 2:
        raise InsufficientNodesError(f"only {inside.size} node(s) of order {N} fall in {window}")
    gaps = np.abs(np.diff(consts.sigma(inside)))
    lam = consts.lambda_N(N)
    return SpacingDiagnostics(
        mean_gap=float(gaps.mean()),
        max_dev=float(np.max(np.abs(gaps - lam)) / lam),
        lambda_N=lam,
        gaps=gaps,
    )

