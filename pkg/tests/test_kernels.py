"""Both kernel backends against each other and against references."""

import subprocess
import sys

import mpmath
import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given, settings
from hypothesis import strategies as st

from poissonquad.errors import NumericalFailureError
from poissonquad.kernels import loops, vectorized


def random_tridiagonal(rng, n):
    return rng.normal(size=n), rng.uniform(0.1, 2.0, size=n - 1)


@pytest.mark.parametrize("n", [1, 2, 7, 60])
def test_tql_matches_eigh(backend, rng, n):
    d, e = random_tridiagonal(rng, n)
    vals, vecs = backend.tql_implicit(d, e)
    dense = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(vals, np.linalg.eigvalsh(dense), atol=1e-12)
    np.testing.assert_allclose(dense @ vecs, vecs * vals, atol=1e-11)
    np.testing.assert_allclose(vecs.T @ vecs, np.eye(n), atol=1e-12)
    first = vecs[np.argmax(np.abs(vecs) > 1e-300, axis=0), np.arange(n)]
    assert np.all(first > 0)


def test_tql_values_only(backend, rng):
    d, e = random_tridiagonal(rng, 20)
    vals, vecs = backend.tql_implicit(d, e, want_vectors=False)
    assert vecs is None
    np.testing.assert_allclose(vals, backend.tql_implicit(d, e)[0], atol=1e-13)


def test_tql_iteration_cap(backend, rng):
    d, e = random_tridiagonal(rng, 30)
    with pytest.raises(NumericalFailureError):
        backend.tql_implicit(d, e, max_iter=1)


def test_backends_agree_on_tql(rng):
    d, e = random_tridiagonal(rng, 80)
    a_vals, a_vecs = loops.tql_implicit(d, e)
    b_vals, b_vecs = vectorized.tql_implicit(d, e)
    np.testing.assert_allclose(a_vals, b_vals, atol=1e-12)
    # the first component can be ~1e-29, so compare columns up to sign
    signs = np.sign(np.sum(a_vecs * b_vecs, axis=0))
    np.testing.assert_allclose(a_vecs, b_vecs * signs, atol=1e-10)


def test_orthonormal_table_backends_agree(rng):
    diag = rng.normal(size=25)
    off = rng.uniform(0.5, 1.5, size=25)
    x = rng.uniform(-2, 2, size=40)
    np.testing.assert_allclose(
        loops.orthonormal_table(diag, off, 0.7, x), vectorized.orthonormal_table(diag, off, 0.7, x), rtol=1e-13
    )


def _f4_brute(a, b, c, d, xi, eta, terms=90):
    with mpmath.workdps(30):
        total = mpmath.mpf(0)
        for m in range(terms):
            for n in range(terms - m):
                total += (
                    mpmath.rf(a, m + n) * mpmath.rf(b, m + n) / (mpmath.rf(c, m) * mpmath.rf(d, n))
                    * mpmath.mpf(xi) ** m * mpmath.mpf(eta) ** n / (mpmath.factorial(m) * mpmath.factorial(n))
                )
        return float(total)


@pytest.mark.parametrize(
    "args",
    [(1.0, 1.5, 1.0, 1.0, 0.04, 0.04), (0.6, 1.1, 1.5, 0.5, 0.02, 0.06), (1.0, 1.5, 1.0, 1.0, -0.05, 0.03)],
)
def test_f4_series(backend, args):
    value, terms, ok = backend.f4_series(*args, 1e-14, 10**6)
    assert ok and terms > 1
    assert value == pytest.approx(_f4_brute(*args), rel=1e-11)


def test_f4_reports_exhaustion(backend):
    _, _, ok = backend.f4_series(1.0, 1.5, 1.0, 1.0, 0.24, 0.24, 1e-14, 10)
    assert not ok


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.7, -0.5, -0.9])
def test_bessel_ie_matches_scipy(backend, alpha):
    # I_alpha(0) is infinite for alpha < 0
    x = np.geomspace(1e-6, 700, 300)
    if alpha >= 0:
        x = np.concatenate([[0.0], x])
    np.testing.assert_allclose(backend.bessel_ie(alpha, x), sc.ive(alpha, x), rtol=2e-13, atol=1e-300)


@pytest.mark.parametrize("alpha", [0.0, 0.5, 1.0, 2.7, -0.5, -0.9])
def test_bessel_j_matches_scipy(backend, alpha):
    x = np.concatenate([[0.0], np.linspace(1e-6, 100.0, 500)])
    np.testing.assert_allclose(backend.bessel_j(alpha, x), sc.jv(alpha, x), atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(
    alpha=st.floats(-0.95, 6.0),
    x=st.lists(st.floats(0.0, 120.0), min_size=1, max_size=8),
)
def test_bessel_backends_agree(alpha, x):
    x = np.array(x)
    np.testing.assert_allclose(loops.bessel_ie(alpha, x), vectorized.bessel_ie(alpha, x), rtol=1e-12, atol=1e-300)
    np.testing.assert_allclose(loops.bessel_j(alpha, x), vectorized.bessel_j(alpha, x), atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(
    a=st.floats(0.1, 3.0),
    b=st.floats(0.1, 3.0),
    c=st.floats(0.2, 3.0),
    d=st.floats(0.2, 3.0),
    r=st.floats(0.0, 0.85),
    t=st.floats(0.0, 1.0),
)
def test_f4_backends_agree(a, b, c, d, r, t):
    xi, eta = (r * t) ** 2, (r * (1 - t)) ** 2
    v1, _, ok1 = loops.f4_series(a, b, c, d, xi, eta, 1e-13, 10**6)
    v2, _, ok2 = vectorized.f4_series(a, b, c, d, xi, eta, 1e-13, 10**6)
    assert ok1 and ok2
    assert v1 == pytest.approx(v2, rel=1e-11)


def _run_with_backend(value, code):
    env = {"POISSONQUAD_BACKEND": value, "PATH": "/usr/bin:/bin"}
    return subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)


def test_env_flag_selects_numpy():
    res = _run_with_backend("numpy", "import poissonquad; print(poissonquad.BACKEND)")
    assert res.returncode == 0, res.stderr
    assert res.stdout.strip() == "numpy"


def test_env_flag_rejects_unknown():
    res = _run_with_backend("fortran", "import poissonquad")
    assert res.returncode != 0
    assert "POISSONQUAD_BACKEND" in res.stderr


@pytest.mark.parametrize("alpha", [0.0, 0.5, -0.5])
def test_bessel_subnormal_argument(backend, alpha):
    x = np.array([5e-324])
    expected = float((mpmath.mpf(x[0]) / 2) ** alpha / mpmath.gamma(alpha + 1))
    assert backend.bessel_ie(alpha, x)[0] == pytest.approx(expected, rel=1e-12)
    assert backend.bessel_j(alpha, x)[0] == pytest.approx(expected, rel=1e-12)
