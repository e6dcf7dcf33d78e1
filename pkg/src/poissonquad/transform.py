"""Discrete Poisson transforms and their continuous kernels.

For a Gauss rule with orthonormal sample matrix ``U`` the discrete transform
is ``T(z) = U^T diag(1, z, ..., z^{N-1}) U``. Row j of ``T`` is a quadrature
rule for the Poisson integral ``int K(x, y_j, z) f(x) dx``:

* Hermite  -> Mehler kernel (a modified Fourier transform, Fourier at z = +-i)
* Laguerre -> Hille-Hardy kernel (a Bessel transform, Hankel at z = -1)
* Jacobi   -> Bailey kernel through Appell's F4
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceDomainError,
    EvaluationError,
    ParameterDomainError,
    SingularKernelError,
    UnsupportedArgumentError,
)
from .nodes import QuadratureRule
from .orthopoly import HERMITE, JACOBI, LAGUERRE, PolynomialFamily, eval_orthonormal_sequence, family_constants
from .specfun import F4_DEFAULT_MAX_TERMS, F4_DEFAULT_TOL, F4_GUARD_DELTA, F4Params, appell_f4, bessel_ie, bessel_j


def _normalize_z(z):
    z = complex(z)
    if z.imag == 0.0:
        return z.real
    return z


@dataclass(frozen=True)
class DiscreteTransform:
    family: PolynomialFamily
    n: int
    z: complex
    T: np.ndarray
    rule: QuadratureRule

    @property
    def nodes(self) -> np.ndarray:
        return self.rule.nodes


def build_transform(rule: QuadratureRule, z) -> DiscreteTransform:
    """``T_jk = sum_n z^n U[n, j] U[n, k]`` for any complex z."""
    z = _normalize_z(z)
    powers = np.power(z, np.arange(rule.n))
    T = rule.U.T @ (powers[:, None] * rule.U)
    # exact symmetry regardless of matmul summation order
    T = 0.5 * (T + T.T)
    T.setflags(write=False)
    return DiscreteTransform(rule.family, rule.n, z, T, rule)


def apply_quadrature(dt: DiscreteTransform, f) -> np.ndarray:
    """``sum_k T_jk f(x_k)`` for every row j.

    ``f`` is either a callable evaluated on the node array or a vector of
    samples at the nodes.
    """
    if callable(f):
        samples = np.asarray(f(dt.nodes))
        if samples.shape == ():
            samples = np.full(dt.n, samples)
    else:
        samples = np.asarray(f)
    if samples.shape != (dt.n,):
        raise ParameterDomainError(f"expected {dt.n} samples, got shape {samples.shape}")
    bad = np.flatnonzero(~np.isfinite(samples))
    if bad.size:
        k = int(bad[0])
        raise EvaluationError(f"f is not finite at node {k + 1} (x={dt.nodes[k]!r})", k)
    return dt.T @ samples


def _real_z(z, name):
    z = _normalize_z(z)
    if isinstance(z, complex):
        raise UnsupportedArgumentError(f"{name} supports only real z here, got {z}")
    return z


def mehler_kernel(x, y, z):
    """Hermite Poisson kernel, real ``|z| < 1`` or ``z = +-i``."""
    z = _normalize_z(z)
    if isinstance(z, complex):
        if z not in (1j, -1j):
            raise UnsupportedArgumentError(f"complex z must be +i or -i for the Mehler kernel, got {z}")
    elif abs(z) == 1.0:
        raise SingularKernelError(f"Mehler kernel is singular at z = {z}")
    elif abs(z) > 1.0:
        raise UnsupportedArgumentError(f"Mehler kernel needs |z| < 1, got {z}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    one_m = 1.0 - z * z
    expo = -((1.0 + z * z) * (x * x + y * y) - 4.0 * x * y * z) / (2.0 * one_m)
    out = np.exp(expo) / np.sqrt(math.pi * one_m)
    return out if out.ndim else out[()]


def hille_hardy_kernel(x, y, z, alpha=0.0):
    """Laguerre Poisson kernel for real ``-1 <= z < 1`` (z = -1 is the Hankel case)."""
    z = _real_z(z, "Hille-Hardy kernel")
    if z == 1.0:
        raise SingularKernelError("Hille-Hardy kernel is singular at z = 1")
    if not -1.0 <= z < 1.0:
        raise UnsupportedArgumentError(f"Hille-Hardy kernel needs -1 <= z < 1, got {z}")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(x <= 0.0) or np.any(y <= 0.0):
        raise ParameterDomainError("Hille-Hardy kernel needs x > 0 and y > 0")
    quarter = 0.25 * np.log(y / x)
    if z == -1.0:
        out = 0.5 * np.exp(quarter) * bessel_j(alpha, np.sqrt(x * y))
        return out if out.ndim else out[()]
    decay = -(1.0 + z) * (x + y) / (2.0 * (1.0 - z))
    if z > 0.0:
        w = 2.0 * np.sqrt(x * y * z) / (1.0 - z)
        with np.errstate(divide="ignore"):
            log_i = np.log(bessel_ie(alpha, w)) + w
        out = np.exp(-0.5 * alpha * math.log(z) - math.log1p(-z) + quarter + decay + log_i)
    elif z == 0.0:
        # z^{-a/2} I_a(2 sqrt(xyz)) -> (xy)^{a/2} / Gamma(a+1)
        out = np.exp(quarter + decay + 0.5 * alpha * np.log(x * y) - math.lgamma(alpha + 1.0))
    else:
        w = 2.0 * np.sqrt(x * y * -z) / (1.0 - z)
        out = (-z) ** (-0.5 * alpha) / (1.0 - z) * np.exp(quarter + decay) * bessel_j(alpha, w)
    return out if out.ndim else out[()]


def bailey_guard_radius(z: float) -> float:
    """Supremum over x, y in (-1, 1) of sqrt|xi| + sqrt|eta| for the Bailey F4."""
    return 2.0 * math.sqrt(z) / (1.0 + z)


def bailey_generating_function(x, y, z, alpha=0.0, beta=0.0, tol=F4_DEFAULT_TOL, max_terms=F4_DEFAULT_MAX_TERMS):
    """Bailey's closed form of ``sum_n s_n^2 P_n(x) P_n(y) z^n`` (scalar x, y)."""
    ab = alpha + beta
    scale = (1.0 + z) ** 2
    xi = z * (1.0 - x) * (1.0 - y) / scale
    eta = z * (1.0 + x) * (1.0 + y) / scale
    f4 = appell_f4(F4Params(0.5 * (ab + 2.0), 0.5 * (ab + 3.0), alpha + 1.0, beta + 1.0, xi, eta, tol, max_terms))
    log_pref = (
        math.lgamma(ab + 2.0)
        - math.lgamma(alpha + 1.0)
        - math.lgamma(beta + 1.0)
        + math.log1p(-z)
        - (ab + 2.0) * math.log1p(z)
    )
    return math.exp(log_pref) * f4


def bailey_kernel(x, y, z, alpha=0.0, beta=0.0, tol=F4_DEFAULT_TOL, max_terms=F4_DEFAULT_MAX_TERMS):
    """Jacobi Poisson kernel for real ``0 <= z < 1``."""
    z = _real_z(z, "Bailey kernel")
    if not 0.0 <= z < 1.0:
        raise UnsupportedArgumentError(f"Bailey kernel needs 0 <= z < 1, got {z}")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if np.any(np.abs(x) >= 1.0) or np.any(np.abs(y) >= 1.0):
        raise ParameterDomainError("Bailey kernel needs |x| < 1 and |y| < 1")
    G = np.empty(x.shape)
    for idx in np.ndindex(x.shape):
        G[idx] = bailey_generating_function(float(x[idx]), float(y[idx]), z, alpha, beta, tol, max_terms)
    ea = 0.5 * alpha + 0.25
    eb = 0.5 * beta + 0.25
    out = (
        ((1.0 - x) * (1.0 - y)) ** ea
        * ((1.0 + x) * (1.0 + y)) ** eb
        / (2.0 ** (alpha + beta + 1.0) * np.sqrt(1.0 - x * x))
        * G
    )
    return out if out.ndim else out[()]


def kernel(family: PolynomialFamily, x, y, z, **f4_options):
    """Poisson kernel of ``family`` in the ``dx`` form used by :func:`apply_quadrature`."""
    if family.kind == HERMITE:
        return mehler_kernel(x, y, z)
    if family.kind == LAGUERRE:
        return hille_hardy_kernel(x, y, z, family.alpha)
    return bailey_kernel(x, y, z, family.alpha, family.beta, **f4_options)


@dataclass(frozen=True)
class KernelSpec:
    """A Poisson kernel with its parameter z and evaluation point y fixed."""

    family: PolynomialFamily
    z: complex
    y: float
    f4_delta: float = F4_GUARD_DELTA

    def __post_init__(self):
        z = _normalize_z(self.z)
        object.__setattr__(self, "z", z)
        kind = self.family.kind
        if not bool(self.family.contains(self.y)):
            raise ParameterDomainError(f"y = {self.y} is outside the open interval {self.family.interval}")
        if kind == HERMITE:
            ok = z in (1j, -1j) or (not isinstance(z, complex) and -1.0 < z < 1.0)
        elif kind == LAGUERRE:
            ok = not isinstance(z, complex) and -1.0 <= z < 1.0
        else:
            ok = not isinstance(z, complex) and 0.0 <= z < 1.0
        if not ok:
            raise UnsupportedArgumentError(f"z = {z} is not in the supported set for the {kind} kernel")
        if kind == JACOBI and bailey_guard_radius(z) > 1.0 - self.f4_delta:
            raise ConvergenceDomainError(
                f"z = {z} puts the Bailey F4 arguments outside the guarded convergence region"
            )

    def __call__(self, x):
        return kernel(self.family, x, self.y, self.z)


def bilinear_series(family: PolynomialFamily, x, y, z, terms: int = 400):
    """Truncated ``G(x, y, z) = sum_{n<terms} s_n^2 P_n(x) P_n(y) z^n``."""
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    qx = eval_orthonormal_sequence(family, terms, x)
    qy = eval_orthonormal_sequence(family, terms, y)
    powers = np.power(_normalize_z(z), np.arange(terms)).reshape((terms,) + (1,) * x.ndim)
    out = np.sum(powers * qx * qy, axis=0)
    return out if out.ndim else out[()]


def kernel_from_series(family: PolynomialFamily, x, y, z, terms: int = 400):
    """``A g(x) g(y) G(x, y, z) sigma'(x)`` with G from :func:`bilinear_series`."""
    c = family_constants(family)
    return c.A * c.g(x) * c.g(y) * c.dsigma_dx(x) * bilinear_series(family, x, y, z, terms)


def limiting_entry(family: PolynomialFamily, xj, xk, z, N: int):
    """Large-N approximation ``A g(x_j) g(x_k) G(x_j, x_k, z) lambda_N`` of ``T_jk``."""
    c = family_constants(family)
    return kernel(family, xk, xj, z) * c.lambda_N(N) / c.dsigma_dx(xk)
