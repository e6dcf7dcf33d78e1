"""Pure-numpy formulations of the kernels in :mod:`loops`.

Loops that are inherently sequential (QL sweeps, recurrences in the degree)
stay as Python loops; everything independent (eigenvector columns, sample
points, anti-diagonal entries) is vectorized.
"""

import math

import numpy as np

from ._common import I_SWITCH, J_SERIES_MAX, LN2, LOG_TINY, anti_diagonal_count, run_tql


def _tql_core(d, e, z, max_iter):
    n = d.size
    want = z.size > 0
    eps = np.finfo(float).eps
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
            s = c = 1.0
            p = 0.0
            underflow = False
            for i in range(m - 1, l - 1, -1):
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
                if want:
                    zi = z[:, i].copy()
                    zi1 = z[:, i + 1]
                    z[:, i] = c * zi - s * zi1
                    z[:, i + 1] = s * zi + c * zi1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return total


def tql_implicit(diag, offdiag, want_vectors=True, max_iter=10_000):
    return run_tql(_tql_core, diag, offdiag, want_vectors, max_iter)


def orthonormal_table(diag, off, q0, x):
    x = np.asarray(x, dtype=float)
    n = len(diag)
    out = np.empty((n, x.size))
    out[0] = q0
    if n > 1:
        out[1] = (x - diag[0]) * q0 / off[0]
    for k in range(1, n - 1):
        out[k + 1] = ((x - diag[k]) * out[k] - off[k - 1] * out[k - 1]) / off[k]
    return out


def _log_pochhammer_terms(c, v, size):
    m = np.arange(1, size)
    lg = np.zeros(size)
    sg = np.ones(size)
    if v == 0.0:
        lg[1:] = -np.inf
        sg[1:] = 0.0
        return lg, sg
    cm = c + m - 1
    lg[1:] = np.cumsum(math.log(abs(v)) - np.log(np.abs(cm)) - np.log(m))
    sg[1:] = np.cumprod(np.sign(v) * np.sign(cm))
    return lg, sg


def _log_rising_pair(a, b, size):
    k = np.arange(1, size)
    ak = a + k - 1
    bk = b + k - 1
    lg = np.zeros(size)
    sg = np.ones(size)
    with np.errstate(divide="ignore"):
        lg[1:] = np.cumsum(np.log(np.abs(ak)) + np.log(np.abs(bk)))
    sg[1:] = np.cumprod(np.sign(ak) * np.sign(bk))
    return lg, sg


def f4_series(a, b, c, d, xi, eta, tol, max_terms):
    n_diag = anti_diagonal_count(max_terms)
    lp, sp = _log_pochhammer_terms(c, xi, n_diag)
    lq, sq = _log_pochhammer_terms(d, eta, n_diag)
    lab, sab = _log_rising_pair(a, b, n_diag)
    total = 0.0
    prev_abs = -1.0
    terms = 0
    for k in range(n_diag):
        lg = lab[k] + lp[: k + 1] + lq[k::-1]
        keep = lg > LOG_TINY
        if sab[k] != 0.0 and keep.any():
            t = sab[k] * sp[: k + 1][keep] * sq[k::-1][keep] * np.exp(lg[keep])
            diag = float(t.sum())
            dabs = float(np.abs(t).sum())
        else:
            diag = dabs = 0.0
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


def _series_sum(alpha, x, sign):
    # sum_m sign^m (x/2)^{2m} / (m! (alpha+1)_m), vectorized over x
    h = 0.5 * x
    n_terms = int(h.max() + 10.0 * math.sqrt(h.max()) + 30.0)
    m = np.arange(1, n_terms + 1)[:, None]
    ratios = sign * (h * h)[None, :] / (m * (m + alpha))
    terms = np.cumprod(ratios, axis=0)
    return 1.0 + terms.sum(axis=0)


def _ie_asymptotic(alpha, x, n_terms=60):
    mu = 4.0 * alpha * alpha
    k = np.arange(1, n_terms + 1)[:, None]
    ratios = -(mu - (2.0 * k - 1.0) ** 2) / (8.0 * k * x[None, :])
    # stop before the first ratio of magnitude >= 1 (divergent tail)
    stopped = np.maximum.accumulate(np.abs(ratios) >= 1.0, axis=0)
    ratios = np.where(stopped, 0.0, ratios)
    terms = np.cumprod(ratios, axis=0)
    return (1.0 + terms.sum(axis=0)) / np.sqrt(2.0 * math.pi * x)


def bessel_ie(alpha, x):
    alpha = float(alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape)
    zero = x == 0.0
    if alpha == 0.0:
        out[zero] = 1.0
    else:
        out[zero] = 0.0 if alpha > 0.0 else np.inf
    asym = (x > I_SWITCH) & (x > alpha * alpha)
    ser = ~zero & ~asym
    if ser.any():
        xs = x[ser]
        s = _series_sum(alpha, xs, 1.0)
        out[ser] = np.exp(alpha * (np.log(xs) - LN2) - math.lgamma(alpha + 1.0) + np.log(s) - xs)
    if asym.any():
        out[asym] = _ie_asymptotic(alpha, x[asym])
    return out


def _j_miller(alpha, x):
    nu = alpha if alpha > 0.0 else alpha + 1.0
    xmax = float(x.max())
    top = 2 * int((xmax + 10.0 * xmax ** (1.0 / 3.0) + 30.0) / 2.0)
    j = top // 2
    gam = math.exp(math.lgamma(nu + j) - math.lgamma(j + 1.0))
    f_hi = np.zeros_like(x)
    f = np.full_like(x, 1e-30)
    norm = (nu + 2.0 * j) * gam * f
    for k in range(top, 0, -1):
        f_lo = 2.0 * (nu + k) / x * f - f_hi
        f_hi = f
        f = f_lo
        if (k - 1) % 2 == 0:
            j = (k - 1) // 2
            gam *= (j + 1.0) / (nu + j)
            norm = norm + (nu + 2.0 * j) * gam * f
        big = np.abs(f) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            f = f * scale
            f_hi = f_hi * scale
            norm = norm * scale
    lam = np.exp(nu * (np.log(x) - LN2)) / norm
    if alpha > 0.0:
        return lam * f
    return 2.0 * nu / x * (lam * f) - lam * f_hi


def bessel_j(alpha, x):
    alpha = float(alpha)
    x = np.asarray(x, dtype=float)
    out = np.empty(x.shape)
    zero = x == 0.0
    if alpha == 0.0:
        out[zero] = 1.0
    else:
        out[zero] = 0.0 if alpha > 0.0 else np.inf
    ser = ~zero & (x <= J_SERIES_MAX)
    mil = x > J_SERIES_MAX
    if ser.any():
        xs = x[ser]
        s = _series_sum(alpha, xs, -1.0)
        out[ser] = np.exp(alpha * (np.log(xs) - LN2) - math.lgamma(alpha + 1.0)) * s
    if mil.any():
        out[mil] = _j_miller(alpha, x[mil])
    return out
