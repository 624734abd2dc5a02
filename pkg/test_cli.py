#!/usr/bin/env python3
"""
End-to-end runs of the command-line interface: output rows, CSV files and
exit codes.
"""

import csv
import math

import pytest

from cli import attach_negative_values, main, render_scalar
from fractions import Fraction


def read_rows(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))


def by_method(rows):
    return {row["method"]: row for row in rows}


def test_render_scalar():
    assert render_scalar(Fraction(168, 153), 12) == "1.09803921569"
    assert render_scalar(0.5773502691896257, 12) == "0.577350269190"
    assert render_scalar(Fraction(0), 12) == "0"
    assert render_scalar(None, 12) == ""
    assert render_scalar(Fraction(1, 3), 5, "ROUND_CEILING") == "0.33334"


def test_jacobi_bounds_with_oracle(tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["bounds", "jacobi", "-n", "4", "-a", "0", "-b", "0", "--oracle", "--out", str(out)]) == 0
    rows = by_method(read_rows(out))
    assert math.isclose(float(rows["THM1_E1"]["value"]), 96 / 671, rel_tol=1e-11)
    assert math.isclose(float(rows["THM_A"]["value"]), 138 / 975, rel_tol=1e-11)
    assert math.isclose(float(rows["DRIVER_JORDAAN"]["value"]), 1 / 7, rel_tol=1e-11)
    assert abs(float(rows["ER_LOWER_K3"]["value"]) - 0.138365) < 1e-5
    assert abs(float(rows["ER_UPPER_K3"]["value"]) - 0.140074) < 1e-5
    assert abs(float(rows["THM1_E1"]["oracle"]) - 0.138864) < 1e-6
    assert rows["THM1_E1"]["pass"] == "pass"
    assert rows["THM1_E1"]["parameters"] == "alpha=0 beta=0"
    assert all(row["pass"] in ("pass", "n/a") for row in rows.values())


def test_bounds_table_on_stdout(capsys):
    assert main(["bounds", "laguerre", "-n", "2", "-a", "0"]) == 0
    out = capsys.readouterr().out
    assert "GUPTA_MULDOON" in out
    assert "0.588235294118" in out


def test_gegenbauer_bounds(tmp_path):
    out = tmp_path / "g.csv"
    assert main(["bounds", "gegenbauer", "-n", "4", "-l", "1/2", "--oracle", "--out", str(out)]) == 0
    rows = by_method(read_rows(out))
    assert math.isclose(float(rows["THM3"]["value"]), 64 / 451, rel_tol=1e-11)
    assert math.isclose(float(rows["THM_C"]["value"]), 5 / 23, rel_tol=1e-11)
    assert rows["THM3"]["parameters"] == "lambda=1/2"
    assert rows["COR1"]["pass"] == rows["THM_C"]["pass"] == "pass"


def test_zeros(capsys):
    assert main(["zeros", "jacobi", "-n", "2", "-a", "0", "-b", "0"]) == 0
    out = capsys.readouterr().out
    assert "-0.577350269190" in out
    assert "0.577350269190" in out

    assert main(["zeros", "laguerre", "-n", "2", "-a", "0"]) == 0
    out = capsys.readouterr().out
    assert "0.585786437627" in out
    assert "3.41421356237" in out


def test_zeros_digits(capsys):
    assert main(["zeros", "jacobi", "-n", "4", "-a", "0", "-b", "0", "--digits", "5"]) == 0
    assert "0.86114" in capsys.readouterr().out


def test_verify_empty_grid(capsys):
    assert main(["verify", "--grid", "empty"]) == 0
    assert "passed=0 failed=0" in capsys.readouterr().out


def test_verify_smoke_is_byte_identical(tmp_path, capsys):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["verify", "--grid", "smoke", "--threads", "1", "--out", str(first)]) == 0
    assert main(["verify", "--grid", "smoke", "--threads", "2", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert b"\r\n" not in first.read_bytes()
    header = first.read_text(encoding="utf-8").splitlines()[0]
    assert header == "family,n,parameters,quantity,method,value,direction,applicable,oracle,pass"
    assert "auxiliary_failed=0" in capsys.readouterr().out


def test_fig1(capsys):
    assert main(["fig1", "--from", "0", "--to", "10", "--step", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "lambda,rho"
    assert lines[1] == "0,1.09803921569"
    values = [float(line.split(",")[1]) for line in lines[1:]]
    assert len(values) == 11
    assert all(1 < v < 1.6 for v in values)
    assert all(a < b for a, b in zip(values, values[1:]))


def test_fig1_large_lambda_and_degree(capsys):
    assert main(["fig1", "--from", "1000", "--to", "1000", "-n", "1000"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "lambda,rho,n,phi,r"
    assert float(lines[1].split(",")[1]) > 1.59


def test_negative_rationals_as_separate_tokens(tmp_path):
    out = tmp_path / "neg.csv"
    assert main(["bounds", "jacobi", "-n", "4", "-a", "-1/2", "-b", "0", "--oracle", "--out", str(out)]) == 0
    rows = by_method(read_rows(out))
    assert rows["THM1_E1"]["parameters"] == "alpha=-1/2 beta=0"
    assert main(["bounds", "gegenbauer", "-n", "5", "-l", "-1/4"]) == 0
    assert main(["zeros", "laguerre", "-n", "3", "-a", "-0.5"]) == 0


def test_attach_negative_values():
    assert attach_negative_values(["-a", "-1/2", "-b", "-.5", "--from", "-3"]) == [
        "-a=-1/2", "-b=-.5", "--from=-3"]
    assert attach_negative_values(["--oracle", "-n", "4"]) == ["--oracle", "-n", "4"]
    assert attach_negative_values(["-a", "-b"]) == ["-a", "-b"]


@pytest.mark.parametrize("k", ["11", "12"])
def test_high_order_bracket_passes_near_minus_one(tmp_path, capsys, k):
    out = tmp_path / "k.csv"
    argv = ["bounds", "jacobi", "-n", "4", "-a", "-9/10", "-b", "-9/10", "--oracle", "--k", k, "--out", str(out)]
    assert main(argv) == 0
    rows = by_method(read_rows(out))
    assert rows[f"ER_LOWER_K{k}"]["pass"] == rows[f"ER_UPPER_K{k}"]["pass"] == "pass"
    assert "contradicted" not in capsys.readouterr().err


def test_verify_reports_unresolved_count(capsys):
    assert main(["verify", "--grid", "smoke", "--k", "12"]) == 0
    assert "unresolved=0" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["bounds", "jacobi", "-n", "4", "-a", "0"],
    ["bounds", "jacobi", "-n", "4", "-a", "-2", "-b", "0"],
    ["bounds", "hermite", "-n", "4"],
    ["bounds", "jacobi", "-n", "0", "-a", "0", "-b", "0"],
    ["zeros", "jacobi", "-n", "201", "-a", "0", "-b", "0"],
    ["verify", "--grid", "nonexistent"],
    ["fig1", "--from", "-1/2"],
    ["verify", "--grid", "smoke", "--k", "40"],
    ["zeros", "jacobi", "-n", "4", "-a", "0", "-b", "0", "--digits", "0"],
    ["zeros", "jacobi", "-n", "4", "-a", "0", "-b", "0", "--log-level", "LOUD"],
])
def test_usage_errors_exit_two(argv):
    assert main(argv) == 2


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
