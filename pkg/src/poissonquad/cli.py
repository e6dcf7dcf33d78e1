"""Command-line front end.

Subcommands::

    poissonquad nodes     --family F [--alpha A --beta B] --n N
    poissonquad matrix    --family F --n N --z Z
    poissonquad quad      --family F --n N --z Z (--f NAME | --samples PATH) [--j J] [--oracle]
    poissonquad reproduce {fig1,fig2,fig3} [overrides]

``--z`` takes ``re`` or ``re,im`` (write ``--z=-1`` for negative values).
Exit status: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    AccuracyError,
    ConvergenceDomainError,
    NumericalFailureError,
    PoissonQuadError,
    UnsupportedArgumentError,
)
from .nodes import quadrature_rule
from .oracle import IntegralTask, bessel_integrand, closed_form_rhs, direct_transform, jacobi_weighted
from .orthopoly import JACOBI, KINDS, PolynomialFamily
from .transform import apply_quadrature, build_transform

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

FIG1_GRID = np.arange(1, 100) / 100.0
FIGURE_DEFAULTS = {
    "fig1": {"n": 31, "c": 1.0},
    "fig2": {"n": 30, "alpha": 0.0, "c": 2.0, "z": 0.1},
    "fig3": {"n": 50, "alpha": 0.0, "beta": 0.0, "z": 0.25, "degree": 5},
}


class ValidationError(PoissonQuadError, ValueError):
    pass


@dataclass
class Table:
    command: str
    columns: list
    rows: list
    config: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)


def fmt_number(v) -> str:
    """Shortest round-trip decimal form; integers stay integers."""
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return str(int(v))
    if isinstance(v, str):
        return v
    v = float(v)
    if v == 0.0:
        return "0.0"
    return repr(v)


def render_csv(table: Table) -> str:
    lines = [f"# poissonquad {table.command}"]
    lines += [f"# {k}={v}" for k, v in table.config.items()]
    lines += [f"# {note}" for note in table.notes]
    lines.append(",".join(table.columns))
    lines += [",".join(fmt_number(v) for v in row) for row in table.rows]
    lines += [f"# {k}={fmt_number(v)}" for k, v in table.summary.items()]
    return "\n".join(lines) + "\n"


def render_json(table: Table) -> str:
    def conv(v):
        if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
            return int(v)
        if isinstance(v, str):
            return v
        v = float(v)
        return v if math.isfinite(v) else None

    doc = {
        "command": table.command,
        "config": table.config,
        "notes": table.notes,
        "columns": table.columns,
        "rows": [[conv(v) for v in row] for row in table.rows],
        "summary": {k: conv(v) for k, v in table.summary.items()},
    }
    return json.dumps(doc, indent=1) + "\n"


def parse_z(text: str) -> complex:
    parts = [p.strip() for p in str(text).split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ValidationError(f"cannot parse z={text!r}; expected 're' or 're,im'")


def _z_repr(z: complex) -> str:
    return fmt_number(z.real) if z.imag == 0 else f"{fmt_number(z.real)},{fmt_number(z.imag)}"


def _family(args) -> PolynomialFamily:
    kind = args.family
    if kind == "hermite":
        return PolynomialFamily.hermite()
    if kind == "laguerre":
        return PolynomialFamily.laguerre(args.alpha)
    return PolynomialFamily.jacobi(args.alpha, args.beta)


def _family_config(family) -> dict:
    cfg = {"family": family.kind}
    if family.kind != "hermite":
        cfg["alpha"] = fmt_number(family.alpha)
    if family.kind == JACOBI:
        cfg["beta"] = fmt_number(family.beta)
    return cfg


# builtin integrands: name -> (factory(family, c, degree), description)
def _expneg(family, c, degree):
    c = 1.0 if c is None else c
    return lambda x: np.exp(-1j * c * np.asarray(x, dtype=float))


def _besselj(family, c, degree):
    return bessel_integrand(family.alpha, 1.0 if c is None else c)


def _jacobi_weighted(family, c, degree):
    if family.kind != JACOBI:
        raise ValidationError("jacobi_weighted needs --family jacobi")
    return jacobi_weighted(family, 0 if degree is None else degree)


def _gaussian(family, c, degree):
    c = 1.0 if c is None else c
    return lambda x: np.exp(-c * np.square(x))


def _poly(family, c, degree):
    d = 0 if degree is None else degree
    return lambda x: np.asarray(x, dtype=float) ** d


BUILTINS: dict[str, tuple[Callable, str]] = {
    "expneg": (_expneg, "exp(-i c x), c=1"),
    "besselj": (_besselj, "x^(1/4) J_alpha(c sqrt(x)), c=1"),
    "jacobi_weighted": (_jacobi_weighted, "(1-x)^(a/2+1/4) (1+x)^(b/2+1/4) P_degree(x)"),
    "gaussian": (_gaussian, "exp(-c x^2), c=1"),
    "poly": (_poly, "x^degree"),
}


def builtin_function(name, family, c=None, degree=None):
    if name not in BUILTINS:
        raise ValidationError(f"unknown builtin function {name!r}; choose from {sorted(BUILTINS)}")
    return BUILTINS[name][0](family, c, degree)


def read_samples(path, n):
    rows = []
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                rows.append([float(p) for p in line.split(",")])
    except OSError as exc:
        raise ValidationError(f"cannot read samples file {path}: {exc.strerror}") from exc
    except ValueError as exc:
        raise ValidationError(f"bad number in samples file {path}: {exc}") from exc
    if len(rows) != n or any(len(r) not in (1, 2) for r in rows):
        raise ValidationError(f"{path}: expected {n} rows of 're' or 're,im', got {len(rows)} rows")
    vals = np.array([complex(*r) if len(r) == 2 else complex(r[0], 0.0) for r in rows])
    return vals.real if not np.any(vals.imag) else vals


def _row_index(spec, n):
    if spec is None:
        return None
    if spec == "center":
        if n % 2 == 0:
            raise ValidationError(f"--j center needs odd --n, got {n}")
        return (n - 1) // 2
    try:
        j = int(spec)
    except ValueError:
        raise ValidationError(f"--j must be an integer in 1..{n} or 'center', got {spec!r}") from None
    if not 1 <= j <= n:
        raise ValidationError(f"--j must be in 1..{n}, got {j}")
    return j - 1


def run_nodes(family, n) -> Table:
    rule = quadrature_rule(family, n)
    rows = [(k + 1, x, w) for k, (x, w) in enumerate(zip(rule.nodes, rule.weights))]
    return Table("nodes", ["k", "x_k", "w_k"], rows, {**_family_config(family), "n": n})


def run_matrix(family, n, z) -> Table:
    dt = build_transform(quadrature_rule(family, n), z)
    T = np.asarray(dt.T, dtype=complex)
    rows = [(j + 1, k + 1, T[j, k].real, T[j, k].imag) for j in range(n) for k in range(n)]
    return Table("matrix", ["j", "k", "re", "im"], rows, {**_family_config(family), "n": n, "z": _z_repr(z)})


def run_quad(family, n, z, f=None, samples=None, j=None, oracle=False, fname=None) -> Table:
    rule = quadrature_rule(family, n)
    dt = build_transform(rule, z)
    result = np.asarray(apply_quadrature(dt, f if samples is None else samples), dtype=complex)
    rows_idx = range(n) if j is None else [j]
    cfg = {**_family_config(family), "n": n, "z": _z_repr(z), "f": fname or "samples"}
    rows = []
    for i in rows_idx:
        q = result[i]
        o_re = o_im = err = float("nan")
        status = "-"
        if oracle:
            if f is None:
                status = "no-callable"
            else:
                try:
                    ref = complex(direct_transform(IntegralTask(family, float(rule.nodes[i]), z, f)))
                    status = "ok"
                except AccuracyError as exc:
                    ref = complex(exc.estimate)
                    status = "accuracy"
                except (UnsupportedArgumentError, ConvergenceDomainError):
                    ref = None
                    status = "unsupported"
                if ref is not None:
                    o_re, o_im, err = ref.real, ref.imag, abs(q - ref)
        rows.append((i + 1, rule.nodes[i], q.real, q.imag, o_re, o_im, err, status))
    cols = ["j", "y_j", "quad_re", "quad_im", "oracle_re", "oracle_im", "abs_err", "status"]
    return Table("quad", cols, rows, cfg)


def run_reproduce(figure, n=None, z=None, c=None, alpha=None, beta=None, degree=None) -> Table:
    if figure not in FIGURE_DEFAULTS:
        raise ValidationError(f"unknown figure {figure!r}")
    p = dict(FIGURE_DEFAULTS[figure])
    for key, val in (("n", n), ("z", z), ("c", c), ("alpha", alpha), ("beta", beta), ("degree", degree)):
        if val is None:
            continue
        if key not in p:
            raise ValidationError(f"{figure} does not take --{key}")
        p[key] = val
    if figure != "fig1":
        zc = complex(p["z"])
        if zc.imag != 0:
            raise ValidationError(f"{figure} needs real z")
        p["z"] = zc.real
        # fig2's closed form carries z^{-alpha/2}
        ok = 0.0 <= p["z"] <= 1.0 if figure == "fig3" else 0.0 < p["z"] <= 1.0
        if not ok:
            raise ValidationError(f"z = {p['z']} is outside the range of the {figure} identity")

    if figure == "fig1":
        family = PolynomialFamily.hermite()
        rule = quadrature_rule(family, p["n"])
        if p["n"] % 2 == 0:
            raise ValidationError(f"fig1 uses the center row and needs odd --n, got {p['n']}")
        j = rule.center_index
        c_val = p["c"]
        samples = np.exp(-1j * c_val * rule.nodes)
        lhs_fn = closed_form_rhs("fig1", c=c_val)
        rows = []
        for zz in FIG1_GRID:
            rhs = complex(apply_quadrature(build_transform(rule, zz), samples)[j])
            rows.append((float(zz), float(lhs_fn(zz)), rhs.real, rhs.imag))
        notes = ["abscissa=z, grid z_m=m/100 for m=1..99, row j=(N+1)/2 (y_j=0)", "f(x)=exp(-i c x)"]
        cfg = {"figure": figure, "family": "hermite", "n": p["n"], "c": fmt_number(c_val)}
    elif figure == "fig2":
        family = PolynomialFamily.laguerre(p["alpha"])
        rule = quadrature_rule(family, p["n"])
        f = bessel_integrand(family.alpha, p["c"])
        rhs = apply_quadrature(build_transform(rule, p["z"]), f)
        lhs = closed_form_rhs("fig2", z=p["z"], c=p["c"], alpha=family.alpha)(rule.nodes)
        rows = [(j + 1, lhs[j], float(np.real(rhs[j])), float(np.imag(rhs[j]))) for j in range(rule.n)]
        notes = ["abscissa=j, error norm over all j=1..N", "f(x)=x^(1/4) J_alpha(c sqrt(x))"]
        cfg = {
            "figure": figure, "family": "laguerre", "n": p["n"],
            "alpha": fmt_number(p["alpha"]), "c": fmt_number(p["c"]), "z": fmt_number(p["z"]),
        }
    else:
        family = PolynomialFamily.jacobi(p["alpha"], p["beta"])
        rule = quadrature_rule(family, p["n"])
        f = jacobi_weighted(family, p["degree"])
        rhs = apply_quadrature(build_transform(rule, p["z"]), f)
        lhs = closed_form_rhs("fig3", z=p["z"], n=p["degree"], alpha=family.alpha, beta=family.beta)(rule.nodes)
        rows = [(j + 1, lhs[j], float(np.real(rhs[j])), float(np.imag(rhs[j]))) for j in range(rule.n)]
        notes = ["abscissa=j, error norm over all j=1..N", "f(x)=(1-x)^(a/2+1/4) (1+x)^(b/2+1/4) P_degree(x)"]
        cfg = {
            "figure": figure, "family": "jacobi", "n": p["n"], "alpha": fmt_number(p["alpha"]),
            "beta": fmt_number(p["beta"]), "z": fmt_number(p["z"]), "degree": p["degree"],
        }
    diff = np.array([r[1] - r[2] for r in rows])
    table = Table("reproduce", ["abscissa", "lhs", "rhs_re", "rhs_im"], rows, cfg, notes)
    table.summary["error_norm"] = float(np.linalg.norm(diff))
    return table


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="poissonquad", description="Quadratures for Poisson-integral transforms of classical orthogonal polynomials."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, family=True):
        if family:
            p.add_argument("--family", choices=KINDS, required=True)
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--beta", type=float, default=None)
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("nodes", help="Gauss nodes and weights")
    common(p)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("matrix", help="discrete transform matrix T(z)")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True)

    p = sub.add_parser("quad", help="apply T(z) to a function")
    common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--z", required=True)
    p.add_argument("--j", default=None, help="1-based row or 'center' (default: all rows)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--f", choices=sorted(BUILTINS), help="builtin integrand")
    src.add_argument("--samples", help="file with one 're' or 're,im' line per node")
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--oracle", action="store_true", help="add direct-integration reference values")

    p = sub.add_parser("reproduce", help="regenerate the data of a worked example")
    p.add_argument("figure", choices=sorted(FIGURE_DEFAULTS))
    common(p, family=False)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--z", default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--degree", type=int, default=None)
    return parser


def _resolve_family(args):
    if args.family == "hermite" and (args.alpha is not None or args.beta is not None):
        raise ValidationError("hermite takes no --alpha/--beta")
    if args.family == "laguerre" and args.beta is not None:
        raise ValidationError("laguerre takes no --beta")
    args.alpha = 0.0 if args.alpha is None else args.alpha
    args.beta = 0.0 if args.beta is None else args.beta
    return _family(args)


def _dispatch(args) -> Table:
    if args.command == "reproduce":
        z = None if args.z is None else parse_z(args.z)
        return run_reproduce(args.figure, args.n, z, args.c, args.alpha, args.beta, args.degree)
    family = _resolve_family(args)
    if args.n < 1:
        raise ValidationError(f"--n must be >= 1, got {args.n}")
    if args.command == "nodes":
        return run_nodes(family, args.n)
    z = parse_z(args.z)
    if args.command == "matrix":
        return run_matrix(family, args.n, z)
    j = _row_index(args.j, args.n)
    if args.samples is not None:
        samples = read_samples(args.samples, args.n)
        return run_quad(family, args.n, z, samples=samples, j=j, oracle=args.oracle, fname="samples")
    f = builtin_function(args.f, family, args.c, args.degree)
    return run_quad(family, args.n, z, f=f, j=j, oracle=args.oracle, fname=args.f)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        table = _dispatch(args)
    except NumericalFailureError as exc:
        print(f"poissonquad: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (PoissonQuadError, ValueError) as exc:
        print(f"poissonquad: error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    text = render_json(table) if args.format == "json" else render_csv(table)
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"poissonquad: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
            return EXIT_INVALID
    else:
        sys.stdout.write(text)
    if "error_norm" in table.summary and not (args.format == "json" and not args.out):
        print(f"error_norm={fmt_number(table.summary['error_norm'])}")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
