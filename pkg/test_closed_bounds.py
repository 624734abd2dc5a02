#!/usr/bin/env python3
"""
Closed-form bounds on the extreme zeros: worked values, applicability,
specialisations between families and the COR1/THM_C ratio.
"""

from fractions import Fraction
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from closed_bounds import (
    all_bounds,
    cor1,
    cor_a,
    driver_jordaan,
    gupta_muldoon,
    k2_bound,
    k4_lower,
    ratio_decomposition,
    rho,
    thm1_e1,
    thm1_e2,
    thm2_bounds,
    thm3,
    thm_a,
    thm_b,
    thm_c,
    thm_c_refined,
)
from euler_rayleigh import extreme_zero_bracket
from jacobi_models import (
    BoundSource,
    Direction,
    DomainError,
    Family,
    GegenbauerParams,
    JacobiParams,
    LaguerreParams,
    Quantity,
)
from poly_core import gegenbauer_as_jacobi, transformed_coeffs
from power_sums import newton_power_sums
from zero_oracle import one_minus_largest_zero

lambdas = st.fractions(min_value=Fraction(-49, 100), max_value=Fraction(20), max_denominator=20)
degrees = st.integers(min_value=1, max_value=200)


# ========================================================================
# Jacobi
# ========================================================================


def test_thm1_worked_values():
    legendre = JacobiParams(alpha=0, beta=0, n=4)
    e1, e2 = thm1_e1(legendre), thm1_e2(legendre)
    assert e1.value == Fraction(96, 671) and e1.applicable
    assert e2.value == Fraction(64, 451) and e2.applicable
    assert e1.direction is Direction.UPPER and e1.quantity is Quantity.ONE_MINUS_XNN


def test_thm1_side_condition():
    assert not thm1_e2(JacobiParams(alpha=0, beta=40, n=4)).applicable
    wide = thm1_e2(JacobiParams(alpha=0, beta=40, n=50))
    assert wide.applicable
    assert math.isclose(float(wide.value), 6.365e-4, rel_tol=1e-3)
    assert thm1_e2(JacobiParams(alpha=1, beta=11, n=4)).applicable


def test_thm1_below_degree_four_reports_value_but_not_claimed():
    bound = thm1_e1(JacobiParams(alpha=0, beta=0, n=3))
    assert not bound.applicable
    assert bound.value is not None
    assert "n >= 4" in bound.reason


def test_thm1_asymptotics():
    bound = thm1_e1(JacobiParams(alpha=0, beta=0, n=10 ** 6))
    assert math.isclose(float(bound.value) * 10 ** 12, 32 / 11, rel_tol=1e-5)


def test_thm2_mirrors_thm1():
    e1, e2 = thm2_bounds(JacobiParams(alpha=2, beta=0, n=4))
    assert e1.value == thm1_e1(JacobiParams(alpha=0, beta=2, n=4)).value
    assert e2.value == thm1_e2(JacobiParams(alpha=0, beta=2, n=4)).value
    assert e1.quantity is e2.quantity is Quantity.ONE_PLUS_X1N
    assert (e1.source, e2.source) == (BoundSource.THM2_E1, BoundSource.THM2_E2)
    assert "alpha <= 4*beta+7" in thm2_bounds(JacobiParams(alpha=40, beta=0, n=4))[1].reason


def test_second_order_bounds_on_legendre_four():
    legendre = JacobiParams(alpha=0, beta=0, n=4)
    assert thm_a(legendre).value == Fraction(138, 975)
    assert driver_jordaan(legendre).value == Fraction(1, 7)
    assert k2_bound(legendre).value == Fraction(6, 41)
    two_p2_over_p3 = Fraction(2 * 220, 3020)
    assert k2_bound(legendre).value > two_p2_over_p3


def test_third_order_bound_beats_thm1_asymptotically():
    n = 10 ** 4
    for alpha in (0, 1, 2):
        p = JacobiParams(alpha=alpha, beta=alpha, n=n)
        gap = (thm_a(p).value - thm1_e1(p).value) * n * n
        expected = Fraction((alpha + 1) ** 3, 5 * alpha + 11)
        assert math.isclose(float(gap), float(expected), rel_tol=1e-2)


@settings(max_examples=80, deadline=None)
@given(alpha=st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(20), max_denominator=10),
       beta=st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(20), max_denominator=10),
       n=st.integers(min_value=3, max_value=100))
def test_k2_never_sharper_than_driver_jordaan(alpha, beta, n):
    p = JacobiParams(alpha=alpha, beta=beta, n=n)
    assert k2_bound(p).value > driver_jordaan(p).value


@settings(max_examples=80, deadline=None)
@given(alpha=st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(20), max_denominator=10),
       beta=st.fractions(min_value=Fraction(-9, 10), max_value=Fraction(20), max_denominator=10),
       n=st.integers(min_value=4, max_value=100))
def test_half_share_is_sharper(alpha, beta, n):
    p = JacobiParams(alpha=alpha, beta=beta, n=n)
    assert thm1_e2(p).value < thm1_e1(p).value


def test_k4_lower_matches_rayleigh_bracket():
    p = JacobiParams(alpha=0, beta=0, n=4)
    bound = k4_lower(p)
    assert bound.direction is Direction.LOWER
    assert bound.value == extreme_zero_bracket(p, 4)[0]
    assert abs(bound.value - 2 / 43120 ** 0.25) < 1e-12
    assert bound.value < one_minus_largest_zero(p)
    assert not k4_lower(JacobiParams(alpha=0, beta=0, n=3)).applicable


def test_k2_sits_above_rayleigh_upper_at_k2():
    for alpha, beta, n in ((0, 0, 4), (1, 3, 7), ("1/2", "-1/2", 12)):
        p = JacobiParams(alpha=alpha, beta=beta, n=n)
        sums = newton_power_sums(transformed_coeffs(p), 3)
        assert k2_bound(p).value >= 2 * sums[2] / sums[3]


def test_degree_below_three_is_not_claimed():
    p = JacobiParams(alpha=0, beta=0, n=2)
    for bound in (thm_a(p), driver_jordaan(p), k2_bound(p)):
        assert not bound.applicable
        assert bound.reason == "requires n >= 3"


# ========================================================================
# Gegenbauer
# ========================================================================


def test_gegenbauer_worked_values():
    assert thm3(GegenbauerParams(lam="1/2", n=4)).value == Fraction(64, 451)
    assert thm3(GegenbauerParams(lam=1, n=4)).value == Fraction(40, 201)
    assert cor1(GegenbauerParams(lam="1/2", n=4)).value == Fraction(128, 451)
    assert thm_b(GegenbauerParams(lam="1/2", n=4)).value == Fraction(18, 65)
    assert thm_c(GegenbauerParams(lam="1/2", n=4)).value == Fraction(5, 23)
    assert thm_c(GegenbauerParams(lam=1, n=4)).value == Fraction(11, 39)


def test_thm_c_degree_one_is_a_boundary_case():
    bound = thm_c(GegenbauerParams(lam=3, n=1))
    assert bound.value == 1
    assert bound.boundary_case and bound.applicable


def test_refined_thm_c_is_experimental_from_degree_three():
    assert not thm_c_refined(GegenbauerParams(lam=1, n=2)).applicable
    bound = thm_c_refined(GegenbauerParams(lam=1, n=5))
    assert bound.applicable and bound.experimental
    assert bound.value >= thm_c(GegenbauerParams(lam=1, n=5)).value


@settings(max_examples=80, deadline=None)
@given(lam=lambdas, n=st.integers(min_value=4, max_value=200))
def test_thm3_specialises_thm1_e2(lam, n):
    g = GegenbauerParams(lam=lam, n=n)
    assert thm3(g).value == thm1_e2(gegenbauer_as_jacobi(g)).value


@settings(max_examples=80, deadline=None)
@given(lam=lambdas, n=st.integers(min_value=3, max_value=200))
def test_cor_a_specialises_thm_a(lam, n):
    g = GegenbauerParams(lam=lam, n=n)
    assert cor_a(g).value == thm_a(gegenbauer_as_jacobi(g)).value


@settings(max_examples=80, deadline=None)
@given(lam=lambdas, n=degrees)
def test_ratio_decomposes(lam, n):
    g = GegenbauerParams(lam=lam, n=n)
    ratio = ratio_decomposition(g)
    assert ratio.r == cor1(g).value / thm_c(g).value
    assert ratio.r == ratio.rho * ratio.phi
    assert 1 < ratio.rho < Fraction(8, 5)


def test_rho_values():
    assert rho(Fraction(-1, 2)) == 1
    assert rho(Fraction(0)) == Fraction(168, 153)
    assert rho(Fraction(1000)) > Fraction(159, 100)
    values = [rho(Fraction(k, 2)) for k in range(-1, 41)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert abs(ratio_decomposition(GegenbauerParams(lam=1, n=1000)).phi - 1) < 1e-4
    with pytest.raises(DomainError):
        ratio_decomposition(GegenbauerParams(lam=1, n=0))


# ========================================================================
# Laguerre and the catalogue
# ========================================================================


def test_gupta_muldoon_values():
    assert gupta_muldoon(LaguerreParams(alpha=0, n=2)).value == Fraction(10, 17)
    assert gupta_muldoon(LaguerreParams(alpha=0, n=5)).value == Fraction(22, 83)
    first = gupta_muldoon(LaguerreParams(alpha=0, n=1))
    assert first.value == 1 and first.boundary_case
    assert gupta_muldoon(LaguerreParams(alpha="5/2", n=1)).value == Fraction(7, 2)


def test_catalogue_order():
    jacobi = [b.source for b in all_bounds(Family.JACOBI, JacobiParams(alpha=0, beta=0, n=4))]
    assert jacobi == [BoundSource.THM1_E1, BoundSource.THM1_E2, BoundSource.THM2_E1,
                      BoundSource.THM2_E2, BoundSource.THM_A, BoundSource.DRIVER_JORDAAN,
                      BoundSource.K2_BOUND, BoundSource.K4_LOWER]
    gegenbauer = [b.source for b in all_bounds(Family.GEGENBAUER, GegenbauerParams(lam=1, n=4))]
    assert gegenbauer == [BoundSource.THM3, BoundSource.COR1, BoundSource.COR_A, BoundSource.THM_B,
                          BoundSource.THM_C, BoundSource.THM_C_REFINED]
    assert [b.source for b in all_bounds(Family.LAGUERRE, LaguerreParams(alpha=0, n=2))] == [
        BoundSource.GUPTA_MULDOON
    ]


def test_float_parameters_give_float_values():
    bound = thm1_e1(JacobiParams(alpha=0.5, beta=1.25, n=6))
    exact = thm1_e1(JacobiParams(alpha="1/2", beta="5/4", n=6))
    assert isinstance(bound.value, float)
    assert math.isclose(bound.value, float(exact.value), rel_tol=1e-14)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
