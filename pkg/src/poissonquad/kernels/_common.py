import math

import numpy as np

from ..errors import NumericalFailureError

# Bessel branch switch points shared by both backends.
I_SWITCH = 30.0  # e^-x I_alpha(x): power series below, Hankel asymptotic above
J_SERIES_MAX = 8.0  # J_alpha(x): power series below, Miller recurrence above

EPS = np.finfo(float).eps
LN2 = math.log(2.0)
LOG_TINY = -745.0  # exp() underflows to zero below this


def anti_diagonal_count(max_terms):
    """Largest K with K(K+1)/2 <= max_terms."""
    return int((math.isqrt(8 * int(max_terms) + 1) - 1) // 2)


def run_tql(core, diag, offdiag, want_vectors, max_iter):
    d = np.array(diag, dtype=float)
    n = d.size
    e = np.zeros(n)
    e[: n - 1] = offdiag[: n - 1]
    z = np.eye(n) if want_vectors else np.zeros((0, 0))
    iters = core(d, e, z, max_iter)
    if iters < 0:
        raise NumericalFailureError(
            f"tridiagonal QL did not converge within {max_iter} iterations (N={n})"
        )
    order = np.argsort(d, kind="stable")
    d = d[order]
    if want_vectors:
        z = z[:, order]
        # fix column signs: first nonzero component positive
        for k in range(n):
            col = z[:, k]
            nz = np.flatnonzero(col)
            if nz.size and col[nz[0]] < 0:
                z[:, k] = -col
        return d, z
    return d, None
