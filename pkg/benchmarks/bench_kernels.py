"""Compare the numba and pure-numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Each case is run once untimed so numba compilation is excluded, then timed
with ``timeit``; the best of ``--repeat`` runs is reported.
"""

import argparse
import timeit

import numpy as np

from poissonquad.kernels import loops, vectorized
from poissonquad.orthopoly import PolynomialFamily, symmetric_coeffs


def cases():
    diag, off = symmetric_coeffs(PolynomialFamily.hermite(), 400)
    rng = np.random.default_rng(0)
    x_poly = rng.uniform(-20, 20, 2000)
    x_bessel = rng.uniform(0, 80, 100_000)
    return {
        "tql N=200 (vectors)": lambda m: m.tql_implicit(diag[:200], off[:199]),
        "tql N=400 (values)": lambda m: m.tql_implicit(diag, off[:399], want_vectors=False),
        "recurrence N=400 x 2000": lambda m: m.orthonormal_table(diag, off, 1.0, x_poly),
        "F4 near guard": lambda m: m.f4_series(1.0, 1.5, 1.0, 1.0, 0.24, 0.24, 1e-12, 10**6),
        "F4 x 200 points": lambda m: [
            m.f4_series(1.0, 1.5, 1.0, 1.0, t, 0.2 - t, 1e-12, 10**6) for t in np.linspace(0, 0.2, 200)
        ],
        "I_0.5 scaled x 1e5": lambda m: m.bessel_ie(0.5, x_bessel),
        "J_0.5 x 1e5": lambda m: m.bessel_j(0.5, x_bessel),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = {"numpy": vectorized}
    if loops.HAVE_NUMBA:
        backends["numba"] = loops
    print(f"{'case':28s}" + "".join(f"{name:>12s}" for name in backends) + f"{'speedup':>10s}")
    for label, fn in cases().items():
        times = {}
        for name, module in backends.items():
            fn(module)
            times[name] = min(timeit.repeat(lambda: fn(module), number=1, repeat=args.repeat))
        row = f"{label:28s}" + "".join(f"{times[n] * 1e3:10.2f}ms" for n in backends)
        if "numba" in times:
            row += f"{times['numpy'] / times['numba']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
