"""Scalar-loop kernels, compiled with numba when it is installed.

Without numba the decorator is the identity and these run as plain Python,
which is correct but slow.
"""

import math

import numpy as np

from ._common import I_SWITCH, J_SERIES_MAX, LN2, LOG_TINY, anti_diagonal_count, run_tql

try:
    import numba

    HAVE_NUMBA = True

    def jit(fn):
        return numba.njit(cache=True)(fn)

except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def jit(fn):
        return fn


@jit
def _tql_core(d, e, z, max_iter):
    n = d.shape[0]
    nz = z.shape[0]
    eps = 2.220446049250313e-16
    total = 0
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * dd:
                    break
                m += 1
            if m == l:
                break
            if total >= max_iter:
                return -1
            total += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(nz):
                    f = z[k, i + 1]
                    z[k, i + 1] = s * z[k, i] + c * f
                    z[k, i] = c * z[k, i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total


def tql_implicit(diag, offdiag, want_vectors=True, max_iter=10_000):
    """Eigen-decomposition of a symmetric tridiagonal matrix by implicit QL.

    Returns ascending eigenvalues and, if requested, the matrix whose
    columns are the unit eigenvectors (first nonzero component positive).
    """
    return run_tql(_tql_core, diag, offdiag, want_vectors, max_iter)


@jit
def _orthonormal_table(diag, off, q0, x):
    n = diag.shape[0]
    out = np.empty((n, x.shape[0]))
    for i in range(x.shape[0]):
        xi = x[i]
        prev = 0.0
        cur = q0
        out[0, i] = cur
        for k in range(n - 1):
            nxt = (xi - diag[k]) * cur
            if k > 0:
                nxt -= off[k - 1] * prev
            nxt /= off[k]
            out[k + 1, i] = nxt
            prev = cur
            cur = nxt
    return out


def orthonormal_table(diag, off, q0, x):
    """Rows q_0..q_{N-1} of the symmetric three-term recurrence at points x."""
    x = np.ascontiguousarray(x, dtype=float)
    return _orthonormal_table(
        np.ascontiguousarray(diag, dtype=float), np.ascontiguousarray(off, dtype=float), float(q0), x
    )


@jit
def _log_pochhammer_terms(c, v, size):
    # log|v^m / ((c)_m m!)| and its sign, m = 0..size-1
    lg = np.empty(size)
    sg = np.empty(size)
    lg[0] = 0.0
    sg[0] = 1.0
    for m in range(1, size):
        if v == 0.0:
            lg[m] = -np.inf
            sg[m] = 0.0
            continue
        cm = c + m - 1
        lg[m] = lg[m - 1] + math.log(abs(v)) - math.log(abs(cm)) - math.log(m)
        sg[m] = sg[m - 1] * (1.0 if v > 0 else -1.0) * (1.0 if cm > 0 else -1.0)
    return lg, sg


@jit
def _log_rising_pair(a, b, size):
    # log|(a)_k (b)_k| and sign
    lg = np.empty(size)
    sg = np.empty(size)
    lg[0] = 0.0
    sg[0] = 1.0
    for k in range(1, size):
        ak = a + k - 1
        bk = b + k - 1
        if ak == 0.0 or bk == 0.0 or sg[k - 1] == 0.0:
            lg[k] = -np.inf
            sg[k] = 0.0
            continue
        lg[k] = lg[k - 1] + math.log(abs(ak)) + math.log(abs(bk))
        sg[k] = sg[k - 1] * (1.0 if ak > 0 else -1.0) * (1.0 if bk > 0 else -1.0)
    return lg, sg


@jit
def _f4_core(a, b, c, d, xi, eta, tol, n_diag):
    lp, sp = _log_pochhammer_terms(c, xi, n_diag)
    lq, sq = _log_pochhammer_terms(d, eta, n_diag)
    lab, sab = _log_rising_pair(a, b, n_diag)
    total = 0.0
    prev_abs = -1.0
    terms = 0
    for k in range(n_diag):
        diag = 0.0
        dabs = 0.0
        if sab[k] != 0.0:
            for m in range(k + 1):
                lg = lab[k] + lp[m] + lq[k - m]
                if lg > LOG_TINY:
                    t = sab[k] * sp[m] * sq[k - m] * math.exp(lg)
                    diag += t
                    dabs += abs(t)
        terms += k + 1
        total += diag
        if k >= 2:
            if dabs == 0.0 and prev_abs == 0.0:
                return total, terms, True
            if 0.0 < prev_abs and dabs < prev_abs:
                q = dabs / prev_abs
                tail = dabs * q / (1.0 - q)
                bound = tol * abs(total)
                if dabs <= bound and tail <= bound:
                    return total, terms, True
        prev_abs = dabs
    return total, terms, False


def f4_series(a, b, c, d, xi, eta, tol, max_terms):
    """Anti-diagonal summation of Appell's F4; returns (value, terms, converged)."""
    n_diag = anti_diagonal_count(max_terms)
    return _f4_core(float(a), float(b), float(c), float(d), float(xi), float(eta), float(tol), n_diag)


@jit
def _ie_series(alpha, x):
    h = 0.5 * x
    q = h * h
    term = 1.0
    s = 1.0
    scale = 0.0
    m = 0
    while m < 10000:
        m += 1
        term *= q / (m * (m + alpha))
        s += term
        if term < 1e-17 * s and m > h:
            break
        if s > 1e250:
            s *= 1e-250
            term *= 1e-250
            scale += 575.6462732485114  # 250 ln 10
    # log(x) - log 2 rather than log(x/2), which underflows for subnormal x
    return math.exp(alpha * (math.log(x) - LN2) - math.lgamma(alpha + 1.0) + math.log(s) + scale - x)


@jit
def _ie_asymptotic(alpha, x):
    mu = 4.0 * alpha * alpha
    term = 1.0
    s = 1.0
    k = 0
    while k < 500:
        k += 1
        odd = 2.0 * k - 1.0
        new = -term * (mu - odd * odd) / (8.0 * k * x)
        if abs(new) >= abs(term):
            break
        term = new
        s += term
        if abs(term) <= 1e-17 * abs(s):
            break
    return s / math.sqrt(2.0 * math.pi * x)


@jit
def _ie_scalar(alpha, x):
    if x == 0.0:
        if alpha == 0.0:
            return 1.0
        return 0.0 if alpha > 0.0 else np.inf
    if x > I_SWITCH and x > alpha * alpha:
        return _ie_asymptotic(alpha, x)
    return _ie_series(alpha, x)


@jit
def _bessel_ie(alpha, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _ie_scalar(alpha, x[i])
    return out


@jit
def _j_series(alpha, x):
    h = 0.5 * x
    q = h * h
    term = 1.0
    s = 1.0
    m = 0
    while m < 10000:
        m += 1
        term *= -q / (m * (m + alpha))
        s += term
        if abs(term) < 1e-17 * abs(s) and m > h:
            break
    return math.exp(alpha * (math.log(x) - LN2) - math.lgamma(alpha + 1.0)) * s


@jit
def _j_miller(alpha, x):
    nu = alpha if alpha > 0.0 else alpha + 1.0
    top = 2 * int((x + 10.0 * x ** (1.0 / 3.0) + 30.0) / 2.0)
    j = top // 2
    gam = math.exp(math.lgamma(nu + j) - math.lgamma(j + 1.0))
    f_hi = 0.0
    f = 1e-30
    norm = (nu + 2.0 * j) * gam * f
    for k in range(top, 0, -1):
        f_lo = 2.0 * (nu + k) / x * f - f_hi
        f_hi = f
        f = f_lo
        if (k - 1) % 2 == 0:
            j = (k - 1) // 2
            gam *= (j + 1.0) / (nu + j)
            norm += (nu + 2.0 * j) * gam * f
        if abs(f) > 1e250:
            f *= 1e-250
            f_hi *= 1e-250
            norm *= 1e-250
    lam = math.exp(nu * (math.log(x) - LN2)) / norm
    if alpha > 0.0:
        return lam * f
    return 2.0 * nu / x * (lam * f) - lam * f_hi


@jit
def _j_scalar(alpha, x):
    if x == 0.0:
        if alpha == 0.0:
            return 1.0
        return 0.0 if alpha > 0.0 else np.inf
    if x <= J_SERIES_MAX:
        return _j_series(alpha, x)
    return _j_miller(alpha, x)


@jit
def _bessel_j(alpha, x):
    out = np.empty(x.shape[0])
    for i in range(x.shape[0]):
        out[i] = _j_scalar(alpha, x[i])
    return out


def bessel_ie(alpha, x):
    """e^{-x} I_alpha(x) elementwise for a 1-d array x >= 0."""
    return _bessel_ie(float(alpha), np.ascontiguousarray(x, dtype=float))


def bessel_j(alpha, x):
    """J_alpha(x) elementwise for a 1-d array x >= 0."""
    return _bessel_j(float(alpha), np.ascontiguousarray(x, dtype=float))
