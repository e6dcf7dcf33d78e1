"""Classical orthogonal polynomial families and their recurrence data.

Normalizations follow the standard (Szego) conventions: ``H_n`` with
leading coefficient ``2**n``, generalized Laguerre ``L_n^(alpha)`` and Jacobi
``P_n^(alpha, beta)``. The squared norm reciprocals ``s_n**2`` are fixed to

* Hermite  ``1 / (2**n n!)``
* Laguerre ``n! / Gamma(n + alpha + 1)``
* Jacobi   ``(2n+a+b+1) n! Gamma(n+a+b+1) / (Gamma(n+a+1) Gamma(n+b+1))``

which differ from the weight-orthonormal choice only by a factor
independent of ``n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import kernels
from .errors import OrderTooLargeError, ParameterDomainError

HERMITE = "hermite"
LAGUERRE = "laguerre"
JACOBI = "jacobi"
KINDS = (HERMITE, LAGUERRE, JACOBI)

EVAL_POLY_MAX_ORDER = 60


@dataclass(frozen=True)
class PolynomialFamily:
    kind: str
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        kind = str(self.kind).lower()
        object.__setattr__(self, "kind", kind)
        if kind not in KINDS:
            raise ParameterDomainError(f"unknown family {self.kind!r}; expected one of {KINDS}")
        alpha, beta = float(self.alpha), float(self.beta)
        if kind == HERMITE:
            if alpha != 0.0 or beta != 0.0:
                raise ParameterDomainError("Hermite family takes no parameters")
        if kind == LAGUERRE:
            if beta != 0.0:
                raise ParameterDomainError("Laguerre family takes only alpha")
            if not alpha > -1.0:
                raise ParameterDomainError(f"Laguerre requires alpha > -1, got {alpha}")
        if kind == JACOBI and not (alpha > -1.0 and beta > -1.0):
            raise ParameterDomainError(f"Jacobi requires alpha, beta > -1, got ({alpha}, {beta})")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def hermite(cls) -> PolynomialFamily:
        return cls(HERMITE)

    @classmethod
    def laguerre(cls, alpha: float = 0.0) -> PolynomialFamily:
        return cls(LAGUERRE, alpha)

    @classmethod
    def jacobi(cls, alpha: float = 0.0, beta: float = 0.0) -> PolynomialFamily:
        return cls(JACOBI, alpha, beta)

    @property
    def interval(self) -> tuple[float, float]:
        return {HERMITE: (-math.inf, math.inf), LAGUERRE: (0.0, math.inf), JACOBI: (-1.0, 1.0)}[self.kind]

    @property
    def mu0(self) -> float:
        """Total mass of the orthogonality measure."""
        if self.kind == HERMITE:
            return math.sqrt(math.pi)
        if self.kind == LAGUERRE:
            return math.gamma(self.alpha + 1.0)
        a, b = self.alpha, self.beta
        return math.exp(
            (a + b + 1.0) * math.log(2.0) + math.lgamma(a + 1.0) + math.lgamma(b + 1.0) - math.lgamma(a + b + 2.0)
        )

    def weight(self, x):
        """Density of the orthogonality measure."""
        x = np.asarray(x, dtype=float)
        if self.kind == HERMITE:
            return np.exp(-x * x)
        if self.kind == LAGUERRE:
            return x**self.alpha * np.exp(-x)
        return (1.0 - x) ** self.alpha * (1.0 + x) ** self.beta

    def contains(self, x) -> np.ndarray:
        """True where x lies in the open orthogonality interval."""
        lo, hi = self.interval
        x = np.asarray(x, dtype=float)
        return (x > lo) & (x < hi)

    def __str__(self):
        if self.kind == HERMITE:
            return "hermite"
        if self.kind == LAGUERRE:
            return f"laguerre(alpha={self.alpha:g})"
        return f"jacobi(alpha={self.alpha:g}, beta={self.beta:g})"


class RecurrenceCoeffs(NamedTuple):
    """Coefficients of ``x P_n = a P_{n+1} + b P_n + c P_{n-1}``."""

    a: float
    b: float
    c: float
    n: int


def _check_order(n):
    if int(n) != n or n < 0:
        raise ParameterDomainError(f"order must be a nonnegative integer, got {n}")
    return int(n)


def recurrence_coeffs(family: PolynomialFamily, n: int) -> RecurrenceCoeffs:
    n = _check_order(n)
    if family.kind == HERMITE:
        return RecurrenceCoeffs(0.5, 0.0, float(n), n)
    if family.kind == LAGUERRE:
        a = family.alpha
        return RecurrenceCoeffs(-(n + 1.0), 2.0 * n + a + 1.0, -(n + a) if n > 0 else 0.0, n)
    a, b = family.alpha, family.beta
    s = a + b
    if n == 0:
        return RecurrenceCoeffs(2.0 / (s + 2.0), (b - a) / (s + 2.0), 0.0, 0)
    t = 2.0 * n + s
    A = 2.0 * (n + 1.0) * (n + s + 1.0) / ((t + 1.0) * (t + 2.0))
    B = (b * b - a * a) / (t * (t + 2.0))
    C = 2.0 * (n + a) * (n + b) / (t * (t + 1.0))
    return RecurrenceCoeffs(A, B, C, n)


def log_leading_coeff(family: PolynomialFamily, n: int) -> tuple[float, float]:
    """``(log|k_n|, sign(k_n))`` for the coefficient of x**n in P_n."""
    n = _check_order(n)
    if family.kind == HERMITE:
        return n * math.log(2.0), 1.0
    if family.kind == LAGUERRE:
        return -math.lgamma(n + 1.0), (-1.0) ** n
    if n == 0:
        return 0.0, 1.0
    s = family.alpha + family.beta
    return (
        math.lgamma(2.0 * n + s + 1.0) - n * math.log(2.0) - math.lgamma(n + 1.0) - math.lgamma(n + s + 1.0),
        1.0,
    )


def leading_coeff(family: PolynomialFamily, n: int) -> float:
    logk, sign = log_leading_coeff(family, n)
    return sign * math.exp(logk)


def log_norm_sq_recip(family: PolynomialFamily, n: int) -> float:
    n = _check_order(n)
    if family.kind == HERMITE:
        return -n * math.log(2.0) - math.lgamma(n + 1.0)
    if family.kind == LAGUERRE:
        return math.lgamma(n + 1.0) - math.lgamma(n + family.alpha + 1.0)
    a, b = family.alpha, family.beta
    # (2n+a+b+1) Gamma(n+a+b+1) written as Gamma(a+b+2) at n = 0 to dodge the pole at a+b = -1
    if n == 0:
        top = math.lgamma(a + b + 2.0)
    else:
        top = math.log(2.0 * n + a + b + 1.0) + math.lgamma(n + a + b + 1.0)
    return top + math.lgamma(n + 1.0) - math.lgamma(n + a + 1.0) - math.lgamma(n + b + 1.0)


def norm_sq_recip(family: PolynomialFamily, n: int) -> float:
    """s_n**2, the reciprocal squared norm up to an n-independent constant."""
    return math.exp(log_norm_sq_recip(family, n))


def symmetric_coeffs(family: PolynomialFamily, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal ``B_0..B_{N-1}`` and off-diagonal ``sqrt(A_n C_n)``, n = 0..N-1.

    The off-diagonal has N entries; the last couples degree N-1 to N and is
    only needed for evaluating P_N itself.
    """
    diag = np.empty(N)
    off = np.empty(N)
    for n in range(N):
        rc = recurrence_coeffs(family, n)
        nxt = recurrence_coeffs(family, n + 1)
        diag[n] = rc.b
        prod = rc.a * nxt.c
        if not prod > 0.0:
            raise ParameterDomainError(f"A_n C_n = {prod} is not positive at n={n} for {family}")
        off[n] = math.sqrt(prod)
    return diag, off


def _degree_signs(family, N):
    # the symmetric recurrence produces sign(prod A_i) * s_n P_n
    if family.kind == LAGUERRE:
        return (-1.0) ** np.arange(N)
    return np.ones(N)


def eval_orthonormal_sequence(family: PolynomialFamily, N: int, x):
    """Values ``s_n P_n(x)`` for n = 0..N-1.

    Computed by the symmetrized recurrence, so neither P_n nor s_n is
    formed separately. For array x the result has shape ``(N,) + x.shape``.
    """
    if N < 1:
        raise ParameterDomainError(f"N must be >= 1, got {N}")
    x = np.asarray(x, dtype=float)
    diag, off = symmetric_coeffs(family, N)
    q0 = math.exp(0.5 * log_norm_sq_recip(family, 0))
    table = kernels.orthonormal_table(diag, off, q0, x.ravel())
    table *= _degree_signs(family, N)[:, None]
    return table.reshape((N,) + x.shape)


def eval_poly(family: PolynomialFamily, n: int, x):
    """Raw ``P_n(x)`` in the standard normalization, via the three-term recurrence."""
    n = _check_order(n)
    if n > EVAL_POLY_MAX_ORDER:
        raise OrderTooLargeError(f"eval_poly supports n <= {EVAL_POLY_MAX_ORDER}; use eval_orthonormal_sequence")
    x = np.asarray(x, dtype=float)
    prev = np.zeros_like(x)
    cur = np.ones_like(x)
    for k in range(n):
        rc = recurrence_coeffs(family, k)
        prev, cur = cur, ((x - rc.b) * cur - rc.c * prev) / rc.a
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class FamilyConstants:
    """Per-family scaffolding of the limiting form of the discrete transform.

    ``T_jk ~ A g(x_j) g(x_k) G(x_j, x_k, z) * lambda_N`` for large N, and the
    Poisson kernel in the ``dx`` form is ``A g(x) g(y) G(x, y, z) sigma'(x)``
    where ``G`` is the bilinear series built from :func:`norm_sq_recip`.
    """

    family: PolynomialFamily
    g: Callable = field(repr=False)
    sigma: Callable = field(repr=False)
    dsigma_dx: Callable = field(repr=False)
    A: float
    interval: tuple
    lambda_coeff: float

    def lambda_N(self, N: int) -> float:
        """Asymptotic node spacing in the sigma variable."""
        if self.family.kind == JACOBI:
            return self.lambda_coeff / N
        return self.lambda_coeff / math.sqrt(N)


def family_constants(family: PolynomialFamily) -> FamilyConstants:
    if family.kind == HERMITE:
        return FamilyConstants(
            family,
            g=lambda x: np.exp(-0.5 * np.square(x)),
            sigma=lambda x: np.asarray(x, dtype=float),
            dsigma_dx=lambda x: np.ones_like(np.asarray(x, dtype=float)),
            A=1.0 / math.sqrt(math.pi),
            interval=family.interval,
            lambda_coeff=math.pi / math.sqrt(2.0),
        )
    if family.kind == LAGUERRE:
        e = 0.5 * family.alpha + 0.25
        return FamilyConstants(
            family,
            g=lambda x: np.asarray(x, dtype=float) ** e * np.exp(-0.5 * np.asarray(x, dtype=float)),
            sigma=np.sqrt,
            dsigma_dx=lambda x: 0.5 / np.sqrt(x),
            A=2.0,
            interval=family.interval,
            lambda_coeff=0.5 * math.pi,
        )
    ea = 0.5 * family.alpha + 0.25
    eb = 0.5 * family.beta + 0.25
    return FamilyConstants(
        family,
        g=lambda x: (1.0 - np.asarray(x, dtype=float)) ** ea * (1.0 + np.asarray(x, dtype=float)) ** eb,
        sigma=np.arccos,
        # arccos is decreasing; spacing and measure use |d sigma/dx|
        dsigma_dx=lambda x: 1.0 / np.sqrt(1.0 - np.square(x)),
        A=2.0 ** (-(family.alpha + family.beta + 1.0)),
        interval=family.interval,
        lambda_coeff=math.pi,
    )
