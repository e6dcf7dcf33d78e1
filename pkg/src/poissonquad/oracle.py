"""Independent reference values for the Poisson-integral quadratures.

Two routes, both independent of the discrete transform matrices:

* :func:`direct_transform` integrates ``K(x, y, z) f(x)`` numerically with
  adaptive Gauss-Kronrod panels on a truncated domain.
* :func:`closed_form_rhs` evaluates the analytic values of the three worked
  examples (Hermite with ``f = exp(-icx)``, Laguerre with a Bessel integrand,
  Jacobi with a weighted Jacobi polynomial).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import AccuracyError, ParameterDomainError, UnsupportedArgumentError
from .orthopoly import HERMITE, LAGUERRE, PolynomialFamily, eval_poly
from .specfun import bessel_j
from .transform import KernelSpec

# 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1] (QUADPACK qk15)
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_K_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_K_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod abscissae
_G_WEIGHTS = np.zeros(15)
_G_WEIGHTS[[1, 3, 5]] = _WG[:3]
_G_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
_G_WEIGHTS[7] = _WG[3]


def _panel(func, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    vals = np.asarray(func(mid + half * _K_NODES))
    k = half * np.dot(_K_WEIGHTS, vals)
    g = half * np.dot(_G_WEIGHTS, vals)
    return k, abs(k - g)


def _fsum(values):
    values = list(values)
    re = math.fsum(float(np.real(v)) for v in values)
    if any(np.iscomplexobj(v) for v in values):
        return complex(re, math.fsum(float(np.imag(v)) for v in values))
    return re


def integrate_adaptive(func, breakpoints, abs_tol=1e-10, rel_tol=1e-10, max_panels=5000):
    """Adaptive G7-K15 integration over the panels given by ``breakpoints``.

    The panel with the largest error estimate is bisected until the summed
    estimate meets ``max(abs_tol, rel_tol * |value|)``. Returns
    ``(value, error_estimate)``; raises :class:`AccuracyError` when
    ``max_panels`` is reached first.
    """
    pts = np.unique(np.asarray(breakpoints, dtype=float))
    heap = []
    for a, b in zip(pts[:-1], pts[1:]):
        val, err = _panel(func, a, b)
        heap.append((-err, a, b, val))
    heapq.heapify(heap)
    total_err = sum(-h[0] for h in heap)
    running = sum(h[3] for h in heap)
    while True:
        if total_err <= max(abs_tol, rel_tol * abs(running)):
            # running sums drift; confirm with exactly rounded, order-independent sums
            total_err = math.fsum(-h[0] for h in heap)
            value = _fsum(h[3] for h in sorted(heap, key=lambda h: h[1]))
            running = value
            if total_err <= max(abs_tol, rel_tol * abs(value)):
                return value, total_err
        if len(heap) >= max_panels:
            value = _fsum(h[3] for h in sorted(heap, key=lambda h: h[1]))
            raise AccuracyError(
                f"adaptive integration stopped at {len(heap)} panels with error estimate {total_err:.3g}",
                value,
                total_err,
            )
        neg_err, a, b, old = heapq.heappop(heap)
        total_err += neg_err
        running -= old
        mid = 0.5 * (a + b)
        for lo, hi in ((a, mid), (mid, b)):
            val, err = _panel(func, lo, hi)
            heapq.heappush(heap, (-err, lo, hi, val))
            total_err += err
            running += val


@dataclass(frozen=True)
class IntegralTask:
    """``int K(x, y, z) f(x) dx`` over the family's (truncated) interval."""

    family: PolynomialFamily
    y: float
    z: complex
    f: Callable
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    x_max: Optional[float] = None
    endpoint_eps: float = 1e-10
    max_panels: int = 5000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ParameterDomainError("tolerances must be positive")
        if self.x_max is not None and not (0 < self.x_max < math.inf):
            raise ParameterDomainError(f"x_max must be finite and positive, got {self.x_max}")
        if not 0 < self.endpoint_eps < 0.5:
            raise ParameterDomainError(f"endpoint_eps must be in (0, 0.5), got {self.endpoint_eps}")


def _hermite_cutoff(task, spec):
    if isinstance(spec.z, complex):
        if task.x_max is None:
            raise UnsupportedArgumentError("the z = +-i kernel does not decay; pass an explicit x_max")
        return task.x_max
    return max(abs(task.y), 1.0) * 2.0 + math.sqrt(2.0 * math.log(100.0 / task.abs_tol))


def _laguerre_cutoff(task, spec):
    z = spec.z
    if z == -1.0:
        if task.x_max is None:
            raise UnsupportedArgumentError("the z = -1 (Hankel) kernel does not decay; pass an explicit x_max")
        return task.x_max
    y = task.y
    target = math.log(task.abs_tol * 1e-2) - 10.0

    def log_envelope(x):
        return -((1.0 + z) * (x + y) - 4.0 * math.sqrt(x * y * max(z, 0.0))) / (2.0 * (1.0 - z))

    x = max(2.0 * y, 10.0)
    while log_envelope(x) > target:
        x *= 1.5
    return x


def _breakpoints(task, spec):
    kind = task.family.kind
    if kind == HERMITE:
        X = _hermite_cutoff(task, spec)
        return np.linspace(-X, X, 17)
    if kind == LAGUERRE:
        X = task.x_max if task.x_max is not None else _laguerre_cutoff(task, spec)
        # geometric grading toward the x^{-1/4} singularity at 0
        return np.concatenate([[0.0], X * 2.0 ** -np.arange(40, -1, -1)])
    eps = task.endpoint_eps
    depth = int(math.ceil(-math.log2(eps)))
    inner = 1.0 - 2.0 ** -np.arange(1, depth)
    edge = 1.0 - eps
    return np.concatenate([[-edge], -inner[::-1], [0.0], inner, [edge]])


def direct_transform(task: IntegralTask):
    """Reference value of the Poisson integral by adaptive panel integration."""
    spec = KernelSpec(task.family, task.z, task.y)

    def integrand(x):
        return spec(x) * np.asarray(task.f(x))

    value, _ = integrate_adaptive(
        integrand, _breakpoints(task, spec), task.abs_tol, task.rel_tol, task.max_panels
    )
    return value


FIGURES = ("fig1", "fig2", "fig3")


def closed_form_rhs(example_id: str, **params) -> Callable:
    """Analytic value of the Poisson integral for the three worked examples.

    * ``fig1``: Hermite, ``f(x) = exp(-icx)``, evaluated at y = 0, as a
      function of z (params: ``c=1``).
    * ``fig2``: Laguerre, ``f(x) = x^{1/4} J_alpha(c sqrt(x))``, as a function
      of y (params: ``z``, ``c``, ``alpha``).
    * ``fig3``: Jacobi, ``f(x) = (1-x)^{a/2+1/4} (1+x)^{b/2+1/4} P_n(x)``, as a
      function of y (params: ``z``, ``n``, ``alpha``, ``beta``).
    """
    if example_id == "fig1":
        c = float(params.get("c", 1.0))

        def fig1(z):
            z = np.asarray(z, dtype=float)
            q = 1.0 + z * z
            return np.sqrt(2.0 / q) * np.exp(-c * c * (1.0 - z * z) / (2.0 * q))

        return fig1

    if example_id == "fig2":
        z = float(params["z"])
        c = float(params["c"])
        alpha = float(params.get("alpha", 0.0))

        def fig2(y):
            y = np.asarray(y, dtype=float)
            r = (1.0 - z) / (1.0 + z)
            return (
                2.0 * z ** (-0.5 * alpha) / (1.0 + z)
                * y**0.25
                * np.exp(-r * (c * c + y) / 2.0)
                * bessel_j(alpha, 2.0 * c * np.sqrt(y * z) / (1.0 + z))
            )

        return fig2

    if example_id == "fig3":
        z = float(params["z"])
        n = int(params["n"])
        family = PolynomialFamily.jacobi(params.get("alpha", 0.0), params.get("beta", 0.0))

        def fig3(y):
            return z**n * jacobi_weighted(family, n)(y)

        return fig3

    raise ParameterDomainError(f"unknown example {example_id!r}; expected one of {FIGURES}")


def jacobi_weighted(family: PolynomialFamily, n: int) -> Callable:
    """``x -> (1-x)^{a/2+1/4} (1+x)^{b/2+1/4} P_n^{(a,b)}(x)``."""
    ea = 0.5 * family.alpha + 0.25
    eb = 0.5 * family.beta + 0.25

    def f(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - x) ** ea * (1.0 + x) ** eb * eval_poly(family, n, x)

    return f


def bessel_integrand(alpha: float, c: float) -> Callable:
    """``x -> x^{1/4} J_alpha(c sqrt(x))``, the Laguerre example integrand."""

    def f(x):
        x = np.asarray(x, dtype=float)
        return x**0.25 * bessel_j(alpha, c * np.sqrt(x))

    return f
