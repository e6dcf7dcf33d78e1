import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from poissonquad import PolynomialFamily, cli
from poissonquad.errors import NonConvergenceError
from poissonquad.nodes import quadrature_rule
from poissonquad.oracle import closed_form_rhs


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse(text):
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#") and not ln.startswith("error_norm=")]
    reader = csv.DictReader(io.StringIO("\n".join(lines)))
    return list(reader)


def test_nodes_hermite(capsys):
    code, out, _ = run(capsys, "nodes", "--family", "hermite", "--n", "2")
    assert code == 0
    assert "# family=hermite" in out
    rows = parse(out)
    assert [r["k"] for r in rows] == ["1", "2"]
    assert rows[0]["x_k"] == "-0.7071067811865476"
    assert float(rows[1]["x_k"]) == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert float(rows[0]["w_k"]) == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-13)


def test_nodes_laguerre_single(capsys):
    _, out, _ = run(capsys, "nodes", "--family", "laguerre", "--alpha", "0", "--n", "1")
    assert parse(out) == [{"k": "1", "x_k": "1.0", "w_k": "1.0"}]


def test_nodes_legendre_middle_row(capsys):
    _, out, _ = run(capsys, "nodes", "--family", "jacobi", "--alpha", "0", "--beta", "0", "--n", "3")
    mid = parse(out)[1]
    assert mid["k"] == "2"
    assert abs(float(mid["x_k"])) < 1e-15
    assert float(mid["w_k"]) == pytest.approx(8 / 9, abs=1e-14)


def test_floats_round_trip(capsys):
    _, out, _ = run(capsys, "nodes", "--family", "laguerre", "--alpha", "0.3", "--n", "15")
    rule = quadrature_rule(PolynomialFamily.laguerre(0.3), 15)
    assert np.array_equal([float(r["x_k"]) for r in parse(out)], rule.nodes)


@pytest.mark.parametrize("family", ["hermite", "laguerre", "jacobi"])
def test_matrix_identity_at_one(capsys, family):
    _, out, _ = run(capsys, "matrix", "--family", family, "--n", "6", "--z", "1")
    rows = parse(out)
    assert len(rows) == 36
    for r in rows:
        expected = 1.0 if r["j"] == r["k"] else 0.0
        assert abs(float(r["re"]) - expected) < 1e-12 and float(r["im"]) == 0.0


def test_matrix_rank_one_at_zero(capsys):
    _, out, _ = run(capsys, "matrix", "--family", "jacobi", "--alpha", "0.5", "--n", "5", "--z", "0")
    u0 = quadrature_rule(PolynomialFamily.jacobi(0.5, 0.0), 5).U[0]
    for r in parse(out):
        assert float(r["re"]) == pytest.approx(u0[int(r["j"]) - 1] * u0[int(r["k"]) - 1], abs=1e-15)


def test_matrix_complex_z(capsys):
    _, out, _ = run(capsys, "matrix", "--family", "hermite", "--n", "3", "--z=0,1")
    rows = parse(out)
    assert any(float(r["im"]) != 0.0 for r in rows)
    assert "# z=0.0,1.0" in out


def test_quad_center_row(capsys):
    code, out, _ = run(
        capsys, "quad", "--family", "hermite", "--n", "31", "--z", "0.5", "--j", "center", "--f", "expneg", "--oracle"
    )
    assert code == 0
    (row,) = parse(out)
    assert row["j"] == "16" and row["status"] == "ok"
    expected = closed_form_rhs("fig1")(0.5)
    assert float(row["oracle_re"]) == pytest.approx(expected, abs=1e-9)
    assert float(row["quad_re"]) == pytest.approx(expected, abs=5e-3)
    assert abs(float(row["quad_im"])) < 1e-12


def test_quad_oracle_failure_is_flagged(capsys):
    code, out, _ = run(capsys, "quad", "--family", "hermite", "--n", "5", "--z=0,1", "--f", "gaussian", "--oracle")
    assert code == 0
    rows = parse(out)
    assert {r["status"] for r in rows} == {"unsupported"}
    assert all(r["oracle_re"] == "nan" for r in rows)


def test_quad_samples_file(capsys, tmp_path):
    rule = quadrature_rule(PolynomialFamily.laguerre(0.0), 12)
    path = tmp_path / "row5.csv"
    path.write_text("# row 5 of U\n" + "\n".join(repr(float(v)) for v in rule.U[5]) + "\n")
    _, out, _ = run(capsys, "quad", "--family", "laguerre", "--n", "12", "--z", "0.3", "--samples", str(path))
    got = [float(r["quad_re"]) for r in parse(out)]
    np.testing.assert_allclose(got, 0.3**5 * rule.U[5], atol=1e-14)


def test_quad_samples_complex(capsys, tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("1.0,2.0\n1.0,2.0\n1.0,2.0\n")
    _, out, _ = run(capsys, "quad", "--family", "hermite", "--n", "3", "--z", "1", "--samples", str(path))
    for r in parse(out):
        assert (float(r["quad_re"]), float(r["quad_im"])) == pytest.approx((1.0, 2.0), abs=1e-14)


def test_matrix_quad_round_trip(capsys, tmp_path):
    args = ["--family", "jacobi", "--alpha", "0.5", "--beta", "-0.3", "--n", "9", "--z", "0.4"]
    _, mat, _ = run(capsys, "matrix", *args)
    T = np.zeros((9, 9))
    for r in parse(mat):
        T[int(r["j"]) - 1, int(r["k"]) - 1] = float(r["re"])
    rule = quadrature_rule(PolynomialFamily.jacobi(0.5, -0.3), 9)
    samples = np.cos(3 * rule.nodes)
    path = tmp_path / "f.csv"
    path.write_text("\n".join(repr(float(v)) for v in samples))
    _, quad, _ = run(capsys, "quad", *args, "--samples", str(path))
    np.testing.assert_allclose([float(r["quad_re"]) for r in parse(quad)], T @ samples, atol=1e-12)


def test_builtins(capsys):
    for f, extra in [("poly", ["--degree", "3"]), ("gaussian", ["--c", "0.5"]), ("jacobi_weighted", ["--degree", "2"])]:
        code, out, err = run(capsys, "quad", "--family", "jacobi", "--n", "7", "--z", "0.5", "--f", f, *extra)
        assert code == 0, err
        assert len(parse(out)) == 7


def test_besselj_builtin_gives_fig2_data(capsys):
    _, out, _ = run(capsys, "quad", "--family", "laguerre", "--n", "30", "--z", "0.1", "--f", "besselj", "--c", "2")
    rows = parse(out)
    lhs = closed_form_rhs("fig2", z=0.1, c=2.0, alpha=0.0)(np.array([float(r["y_j"]) for r in rows]))
    err = np.linalg.norm(lhs - np.array([float(r["quad_re"]) for r in rows]))
    assert err == pytest.approx(0.0036, abs=1e-4)


def test_determinism(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"out{i}.csv"
        assert cli.main(["reproduce", "fig2", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_reproduce_file_and_summary(capsys, tmp_path):
    path = tmp_path / "fig3.csv"
    code, out, _ = run(capsys, "reproduce", "fig3", "--out", str(path))
    assert code == 0
    assert out.startswith("error_norm=")
    norm = float(out.strip().split("=")[1])
    text = path.read_text()
    assert text.rstrip().endswith(f"# error_norm={norm!r}")
    assert len(parse(text)) == 50 and norm < 5e-4


def test_reproduce_stdout_ends_with_summary(capsys):
    _, out, _ = run(capsys, "reproduce", "fig1")
    assert out.splitlines()[-1].startswith("error_norm=")
    rows = parse(out)
    assert len(rows) == 99 and rows[0]["abscissa"] == "0.01" and rows[-1]["abscissa"] == "0.99"


def test_reproduce_overrides(capsys):
    _, out, _ = run(capsys, "reproduce", "fig2", "--n", "40", "--alpha", "1", "--z", "0.2")
    assert "# n=40" in out and "# alpha=1.0" in out
    assert len(parse(out)) == 40


def test_json_output(capsys):
    _, out, _ = run(capsys, "reproduce", "fig3", "--format", "json")
    doc = json.loads(out)
    assert doc["columns"] == ["abscissa", "lhs", "rhs_re", "rhs_im"]
    assert doc["summary"]["error_norm"] < 5e-4


@pytest.mark.parametrize(
    "argv",
    [
        ["nodes", "--family", "laguerre", "--alpha", "-2", "--n", "3"],
        ["nodes", "--family", "hermite", "--alpha", "1", "--n", "3"],
        ["nodes", "--family", "hermite", "--n", "0"],
        ["matrix", "--family", "hermite", "--n", "3", "--z", "abc"],
        ["quad", "--family", "hermite", "--n", "4", "--z", "0.5", "--f", "expneg", "--j", "center"],
        ["quad", "--family", "hermite", "--n", "4", "--z", "0.5", "--f", "expneg", "--j", "5"],
        ["quad", "--family", "hermite", "--n", "4", "--z", "0.5", "--f", "jacobi_weighted"],
        ["quad", "--family", "hermite", "--n", "4", "--z", "0.5", "--samples", "/nonexistent/samples.csv"],
        ["reproduce", "fig1", "--alpha", "1"],
        ["reproduce", "fig1", "--n", "30"],
        ["reproduce", "fig3", "--z", "1.5"],
        ["reproduce", "fig2", "--z", "-0.5"],
        ["reproduce", "fig2", "--z=0.1,0.2"],
    ],
)
def test_validation_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == cli.EXIT_INVALID
    assert err.startswith("poissonquad: ")
    assert out == ""


def test_write_error_names_path(capsys):
    code, _, err = run(capsys, "nodes", "--family", "hermite", "--n", "2", "--out", "/nonexistent/dir/x.csv")
    assert code == cli.EXIT_INVALID
    assert "/nonexistent/dir/x.csv" in err


def test_numerical_failure_exit_code(capsys, monkeypatch):
    def fail(*args):
        raise NonConvergenceError("no convergence")

    monkeypatch.setattr(cli, "run_nodes", fail)
    code, _, err = run(capsys, "nodes", "--family", "hermite", "--n", "2")
    assert code == cli.EXIT_NUMERICAL
    assert "numerical failure" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "poissonquad", "nodes", "--family", "hermite", "--n", "1"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert "1,0.0,1.7724538509055159" in res.stdout
