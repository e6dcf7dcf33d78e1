import sys

import numpy as np
import pytest

from poissonquad import PolynomialFamily
from poissonquad.kernels import loops, vectorized

FAMILIES = {
    "hermite": PolynomialFamily.hermite(),
    "laguerre": PolynomialFamily.laguerre(0.0),
    "laguerre-a0.7": PolynomialFamily.laguerre(0.7),
    "jacobi": PolynomialFamily.jacobi(0.0, 0.0),
    "jacobi-a0.5-b-0.3": PolynomialFamily.jacobi(0.5, -0.3),
}
BASIC = {k: FAMILIES[k] for k in ("hermite", "laguerre", "jacobi")}


@pytest.fixture(params=list(FAMILIES), ids=list(FAMILIES))
def family(request):
    return FAMILIES[request.param]


@pytest.fixture(params=list(BASIC), ids=list(BASIC))
def basic_family(request):
    return BASIC[request.param]


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    """Kernel implementation module, so both code paths get exercised."""
    if request.param == "numba" and not loops.HAVE_NUMBA:
        pytest.skip("numba not installed")
    return loops if request.param == "numba" else vectorized


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
