#!/usr/bin/env python3
"""
Power sums of the transformed zeros: Newton's identities against the
closed forms in (a, b, t) and the formulas in the leading coefficients.
"""

from fractions import Fraction
import math

import pytest

from jacobi_models import DomainError, JacobiParams, TransformedPoly
from poly_core import transformed_coeffs
from power_sums import (
    closed_form_p,
    lemma1_power_sum,
    newton_power_sums,
    poly_eval,
    q2_coeffs,
    q3_coeffs,
)
from zero_oracle import jacobi_zeros

GRID_VALUES = [Fraction(v) for v in ("0", "1/2", "-1/2", "3/2", "5")]
DEGREES = range(4, 17)


def test_degree_one_power_sums_are_powers():
    p = JacobiParams(alpha="1/2", beta="1/3", n=1)
    P = transformed_coeffs(p)
    sums = newton_power_sums(P, 6)
    z = P.t / P.a
    assert sums.values == tuple(z ** k for k in range(7))


def test_legendre_four_power_sums():
    sums = newton_power_sums(transformed_coeffs(JacobiParams(alpha=0, beta=0, n=4)), 5)
    assert sums.values == (4, 20, 220, 3020, 43120, 620000)
    assert sums.K == 5 and sums.degree == 4


def test_closed_forms_for_legendre_four():
    a, b, t = Fraction(1), Fraction(1), Fraction(20)
    assert [closed_form_p(r, a, b, t) for r in (1, 2, 3, 4)] == [20, 220, 3020, 43120]


def test_closed_forms_through_q2_and_q3():
    # alpha=1, beta=0, n=4
    a, b, t = Fraction(2), Fraction(1), Fraction(24)
    assert poly_eval(q2_coeffs(a, b), t) == 1536
    assert closed_form_p(2, a, b, t) == 60
    assert closed_form_p(3, a, b, t) == 384
    P = transformed_coeffs(JacobiParams(alpha=1, beta=0, n=4))
    assert newton_power_sums(P, 4).values[1:] == tuple(closed_form_p(r, a, b, t) for r in (1, 2, 3, 4))
    assert len(q3_coeffs(a, b)) == 4


def test_lemma1_examples():
    assert lemma1_power_sum(2, [20, 90, 140, 70]) == 220
    assert lemma1_power_sum(4, [20, 90, 140, 70]) == 43120
    with pytest.raises(DomainError):
        lemma1_power_sum(3, [20, 90])
    with pytest.raises(DomainError):
        lemma1_power_sum(5, [20, 90, 140, 70, 1])


def test_domain_errors():
    with pytest.raises(DomainError):
        closed_form_p(5, Fraction(1), Fraction(1), Fraction(20))
    with pytest.raises(DomainError):
        closed_form_p(2, Fraction(0), Fraction(1), Fraction(20))
    with pytest.raises(DomainError):
        newton_power_sums(transformed_coeffs(JacobiParams(alpha=0, beta=0, n=4)), 0)


@pytest.mark.parametrize("n", DEGREES)
def test_three_routes_agree_exactly(n):
    for alpha in GRID_VALUES:
        for beta in GRID_VALUES:
            P = transformed_coeffs(JacobiParams(alpha=alpha, beta=beta, n=n))
            sums = newton_power_sums(P, 4)
            for r in (1, 2, 3, 4):
                assert sums[r] == closed_form_p(r, P.a, P.b, P.t) == lemma1_power_sum(r, P.coeffs)


@pytest.mark.parametrize("alpha, beta", [(0, 0), ("-1/2", "5/2"), (3, "-3/4")])
def test_power_sums_are_log_convex(alpha, beta):
    P = transformed_coeffs(JacobiParams(alpha=alpha, beta=beta, n=7))
    sums = newton_power_sums(P, 11)
    for k in range(1, 11):
        assert sums[k - 1] * sums[k + 1] >= sums[k] ** 2


def test_newton_identities_for_arbitrary_monic_polynomial():
    # (z-1)(z-2)(z-5): b = (8, 17, 10)
    P = TransformedPoly(n=3, coeffs=(Fraction(8), Fraction(17), Fraction(10)),
                        a=Fraction(1), b=Fraction(1), t=Fraction(1))
    sums = newton_power_sums(P, 6)
    assert sums.values == tuple(1 + 2 ** k + 5 ** k for k in range(7))


@pytest.mark.parametrize("n, alpha, beta", [(5, 0, 0), (12, "1/2", 2), (20, "-1/2", "-1/2")])
def test_power_sums_match_oracle_zeros(n, alpha, beta):
    p = JacobiParams(alpha=alpha, beta=beta, n=n)
    sums = newton_power_sums(transformed_coeffs(p), 6)
    zeros = jacobi_zeros(p).zeros
    for k in range(1, 7):
        direct = math.fsum((2 / (1 - x)) ** k for x in zeros)
        assert math.isclose(direct, float(sums[k]), rel_tol=1e-8)


def test_float_path_tracks_exact_path():
    exact = newton_power_sums(transformed_coeffs(JacobiParams(alpha="3/2", beta="1/2", n=9)), 8)
    approx = newton_power_sums(transformed_coeffs(JacobiParams(alpha=1.5, beta=0.5, n=9)), 8)
    for e, f in zip(exact.values, approx.values):
        assert isinstance(f, float)
        assert math.isclose(f, float(e), rel_tol=1e-12)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
