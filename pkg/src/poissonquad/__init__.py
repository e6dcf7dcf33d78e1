"""Gaussian-type quadrature rules for Poisson-integral transforms.

The discrete transform ``T(z) = U^T diag(z^n) U`` built from the Gauss rule
of a classical orthogonal family approximates the integral transform whose
kernel is the family's bilinear generating function: Mehler (Hermite),
Hille-Hardy (Laguerre) and Bailey (Jacobi).
"""

from .kernels import BACKEND
from .nodes import QuadratureRule, gauss_weights, jacobi_matrix, quadrature_rule, spacing_diagnostics, zeros
from .oracle import IntegralTask, closed_form_rhs, direct_transform
from .orthopoly import (
    PolynomialFamily,
    eval_orthonormal_sequence,
    eval_poly,
    family_constants,
    leading_coeff,
    norm_sq_recip,
    recurrence_coeffs,
)
from .specfun import F4Params, appell_f4, bessel_i, bessel_j, log_gamma
from .transform import (
    DiscreteTransform,
    KernelSpec,
    apply_quadrature,
    bailey_kernel,
    build_transform,
    hille_hardy_kernel,
    kernel,
    mehler_kernel,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DiscreteTransform",
    "F4Params",
    "IntegralTask",
    "KernelSpec",
    "PolynomialFamily",
    "QuadratureRule",
    "appell_f4",
    "apply_quadrature",
    "bailey_kernel",
    "bessel_i",
    "bessel_j",
    "build_transform",
    "closed_form_rhs",
    "direct_transform",
    "eval_orthonormal_sequence",
    "eval_poly",
    "family_constants",
    "gauss_weights",
    "hille_hardy_kernel",
    "jacobi_matrix",
    "kernel",
    "leading_coeff",
    "log_gamma",
    "mehler_kernel",
    "norm_sq_recip",
    "quadrature_rule",
    "recurrence_coeffs",
    "spacing_diagnostics",
    "zeros",
]
