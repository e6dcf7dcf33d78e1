"""Hot numeric kernels with two interchangeable backends.

``loops`` holds scalar-loop implementations compiled with ``numba.njit``;
``vectorized`` holds pure-numpy formulations of the same computations.
The backend used by the rest of the package is chosen once at import time
from the ``POISSONQUAD_BACKEND`` environment variable (``numba`` or
``numpy``). When unset, numba is used if it can be imported.

Both modules stay importable regardless of the selection so that tests and
benchmarks can compare them directly.
"""

import os

from . import vectorized
from .loops import HAVE_NUMBA

_requested = os.environ.get("POISSONQUAD_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"POISSONQUAD_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

BACKEND = "numba" if (_requested in ("", "numba") and HAVE_NUMBA) else "numpy"

if BACKEND == "numba":
    from . import loops as _impl
else:
    _impl = vectorized

tql_implicit = _impl.tql_implicit
orthonormal_table = _impl.orthonormal_table
f4_series = _impl.f4_series
bessel_ie = _impl.bessel_ie
bessel_j = _impl.bessel_j

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "tql_implicit",
    "orthonormal_table",
    "f4_series",
    "bessel_ie",
    "bessel_j",
]
