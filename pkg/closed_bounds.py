# closed_bounds.py
"""
Closed-form bounds on the extreme zeros of Jacobi, Gegenbauer and Laguerre
polynomials.

Every bound comes back as a BoundValue. A bound that is not claimed at the
given parameters (degree below its threshold, side condition false) is still
returned, with ``applicable=False`` and a reason, so that grid runs can tell
"bound fails" apart from "bound not claimed". Rational parameters give exact
``Fraction`` values.
"""

from fractions import Fraction
import logging
from typing import Callable, List, Optional, Tuple

from euler_rayleigh import kth_root_upper, two_over_lower
from jacobi_models import (
    AnyParams,
    BoundSource,
    BoundValue,
    Direction,
    DomainError,
    Family,
    GegenbauerParams,
    JacobiParams,
    LaguerreParams,
    Quantity,
    RatioDecomposition,
    Scalar,
)
from power_sums import closed_form_p

logger = logging.getLogger(__name__)

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)
EIGHTH = Fraction(1, 8)
QUARTER = Fraction(1, 4)


def _evaluate(formula: Callable[[], Scalar]) -> Optional[Scalar]:
    # outside their stated range some formulas have no value (zero denominator, t = 0)
    try:
        return formula()
    except (ZeroDivisionError, DomainError):
        return None


def _bound(formula, quantity, direction, source, requirements, **flags) -> BoundValue:
    """requirements: (condition, reason) pairs; the first failing one is reported"""
    reason = next((why for ok, why in requirements if not ok), "")
    return BoundValue(
        value=_evaluate(formula),
        quantity=quantity,
        direction=direction,
        source=source,
        applicable=not reason,
        reason=reason,
        **flags,
    )


# ========================================================================
# 1. JACOBI: LARGEST ZERO
# ========================================================================


def _share_bound(p: JacobiParams, share, source: BoundSource, quantity: Quantity,
              names: Tuple[str, str], side_condition: bool) -> BoundValue:
    n, alpha, beta = p.n, p.alpha, p.beta
    requirements = [(n >= 4, "requires n >= 4")]
    if side_condition:
        wide = n >= max(4, alpha + beta + 3)
        narrow = beta <= 4 * alpha + 7
        requirements.append((
            wide or narrow,
            f"requires n >= max(4, {names[0]}+{names[1]}+3) or {names[1]} <= 4*{names[0]}+7",
        ))

    def formula():
        return 4 * (alpha + 1) * (alpha + 2) * (alpha + 4) / (
            (5 * alpha + 11) * (n * (n + alpha + beta + 1) + share * (alpha + 1) * (beta + 1))
        )

    return _bound(formula, quantity, Direction.UPPER, source, requirements)


def thm1_e1(p: JacobiParams) -> BoundValue:
    """1 - x_nn < 4(a+1)(a+2)(a+4) / ((5a+11)[n(n+a+b+1) + (a+1)(b+1)/3]), n >= 4"""
    return _share_bound(p, THIRD, BoundSource.THM1_E1, Quantity.ONE_MINUS_XNN,
                     ("alpha", "beta"), side_condition=False)


def thm1_e2(p: JacobiParams) -> BoundValue:
    """The sharper form with (a+1)(b+1)/2, claimed when n >= max(4, a+b+3) or b <= 4a+7"""
    return _share_bound(p, HALF, BoundSource.THM1_E2, Quantity.ONE_MINUS_XNN,
                     ("alpha", "beta"), side_condition=True)


def thm2_bounds(p: JacobiParams) -> Tuple[BoundValue, BoundValue]:
    """Bounds on 1 + x_1n, obtained from thm1 at (beta, alpha) via P_n^(a,b)(x) = (-1)^n P_n^(b,a)(-x)"""
    mirrored = p.swapped()
    return (
        _share_bound(mirrored, THIRD, BoundSource.THM2_E1, Quantity.ONE_PLUS_X1N,
                  ("beta", "alpha"), side_condition=False),
        _share_bound(mirrored, HALF, BoundSource.THM2_E2, Quantity.ONE_PLUS_X1N,
                  ("beta", "alpha"), side_condition=True),
    )


def thm_a(p: JacobiParams) -> BoundValue:
    n, alpha, beta = p.n, p.alpha, p.beta

    def formula():
        m = (n + alpha + 1) * (n + alpha + beta + 1)
        inner = 2 - (alpha + 1) * (2 * n + beta - 1) / (m - (alpha + 1) * (alpha + 2))
        return 2 * (alpha + 1) * (alpha + 3) / (m * inner)

    return _bound(formula, Quantity.ONE_MINUS_XNN, Direction.UPPER, BoundSource.THM_A,
                  [(n >= 3, "requires n >= 3")])


def driver_jordaan(p: JacobiParams) -> BoundValue:
    n, alpha, beta = p.n, p.alpha, p.beta

    def formula():
        return 2 * (alpha + 1) * (alpha + 3) / (
            2 * n * (n + alpha + beta + 1) + (alpha + 1) * (alpha + beta + 2)
        )

    return _bound(formula, Quantity.ONE_MINUS_XNN, Direction.UPPER, BoundSource.DRIVER_JORDAAN,
                  [(n >= 3, "requires n >= 3")])


def k2_bound(p: JacobiParams) -> BoundValue:
    """Simplified weakening of 2 p_2 / p_3; never sharper than driver_jordaan"""
    n, alpha, beta = p.n, p.alpha, p.beta

    def formula():
        return 2 * (alpha + 1) * (alpha + 3) / (
            2 * n * (n + alpha + beta + 1) + (alpha + 1) * (beta + 1)
        )

    return _bound(formula, Quantity.ONE_MINUS_XNN, Direction.UPPER, BoundSource.K2_BOUND,
                  [(n >= 3, "requires n >= 3")])


def k4_lower(p: JacobiParams) -> BoundValue:
    """1 - x_nn > 2 / p_4^(1/4), with p_4 in closed form; the root is rounded outward"""
    n = p.n
    one = Fraction(1) if p.exact else 1.0

    def formula():
        a, b = p.alpha + one, p.beta + one
        t = n * (n + p.alpha + p.beta + one)
        return two_over_lower(kth_root_upper(closed_form_p(4, a, b, t), 4))

    return _bound(formula, Quantity.ONE_MINUS_XNN, Direction.LOWER, BoundSource.K4_LOWER,
                  [(n >= 4, "requires n >= 4")])


# ========================================================================
# 2. GEGENBAUER
# ========================================================================


def _thm3_value(lam, n):
    return (2 * lam + 1) * (2 * lam + 3) * (2 * lam + 7) / (
        (10 * lam + 17) * (n * (n + 2 * lam) + EIGHTH * (2 * lam + 1) ** 2)
    )


def thm3(g: GegenbauerParams) -> BoundValue:
    return _bound(lambda: _thm3_value(g.lam, g.n), Quantity.ONE_MINUS_XNN, Direction.UPPER,
                  BoundSource.THM3, [(g.n >= 4, "requires n >= 4")])


def cor1(g: GegenbauerParams) -> BoundValue:
    """1 - x_nn^2 < 2 (1 - x_nn), hence twice thm3"""
    return _bound(lambda: 2 * _thm3_value(g.lam, g.n), Quantity.ONE_MINUS_XNN_SQ, Direction.UPPER,
                  BoundSource.COR1, [(g.n >= 4, "requires n >= 4")])


def cor_a(g: GegenbauerParams) -> BoundValue:
    n, lam = g.n, g.lam

    def formula():
        m = (n + 2 * lam) * (2 * n + 2 * lam + 1)
        inner = 2 - (2 * lam + 1) * (4 * n + 2 * lam - 3) / (
            2 * m - (2 * lam + 1) * (2 * lam + 3)
        )
        return (2 * lam + 1) * (2 * lam + 5) / (m * inner)

    return _bound(formula, Quantity.ONE_MINUS_XNN, Direction.UPPER, BoundSource.COR_A,
                  [(n >= 3, "requires n >= 3")])


def thm_b(g: GegenbauerParams) -> BoundValue:
    n, lam = g.n, g.lam

    def formula():
        nn = n * (n + 2 * lam)
        tail = 2 * (lam + 1) * (2 * lam + 1) ** 2 * (2 * lam + 3) / (
            nn + 2 * (2 * lam + 1) * (2 * lam + 3)
        )
        return (2 * lam + 1) * (2 * lam + 5) / (2 * nn + 2 * lam + 1 + tail)

    return _bound(formula, Quantity.ONE_MINUS_XNN_SQ, Direction.UPPER, BoundSource.THM_B,
                  [(n >= 3, "requires n >= 3")])


def _thm_c_value(lam, n):
    return (2 * lam + 1) * (2 * lam + 9) / (4 * n * (n + 2 * lam) + (2 * lam + 1) * (2 * lam + 5))


def thm_c(g: GegenbauerParams) -> BoundValue:
    """Lower bound on 1 - x_nn^2. At n = 1 the zero is 0 and the bound equals 1."""
    return _bound(lambda: _thm_c_value(g.lam, g.n), Quantity.ONE_MINUS_XNN_SQ, Direction.LOWER,
                  BoundSource.THM_C, [(g.n >= 1, "requires n >= 1")],
                  boundary_case=g.n == 1)


def thm_c_refined(g: GegenbauerParams) -> BoundValue:
    """
    The intermediate form with the extra 3(lambda+1/2)^2/(n-1) term in the
    denominator. It only holds non-strictly (equality at n = 2), so it is
    flagged experimental and claimed from n = 3 on.
    """
    n, lam = g.n, g.lam

    def formula():
        denom = (n + lam) ** 2 + 3 * lam + Fraction(5, 4) + 3 * (lam + HALF) ** 2 / (n - 1)
        return 1 - (n - 1) * (n + 2 * lam + 1) / denom

    return _bound(formula, Quantity.ONE_MINUS_XNN_SQ, Direction.LOWER, BoundSource.THM_C_REFINED,
                  [(n >= 3, "requires n >= 3")], experimental=True)


def ratio_decomposition(g: GegenbauerParams) -> RatioDecomposition:
    """cor1 / thm_c = rho(lambda) * phi(lambda, n)"""
    if g.n < 1:
        raise DomainError(f"ratio needs n >= 1, got n={g.n}")
    lam, n = g.lam, g.n
    nn = n * (n + 2 * lam)
    phi = (nn + QUARTER * (2 * lam + 1) * (2 * lam + 5)) / (nn + EIGHTH * (2 * lam + 1) ** 2)
    factor = rho(lam)
    return RatioDecomposition(rho=factor, phi=phi, r=factor * phi)


def rho(lam: Scalar) -> Scalar:
    """Limit of the ratio as n grows; increases from 1 to 1.6 on (-1/2, inf)"""
    return 8 * (2 * lam + 3) * (2 * lam + 7) / ((2 * lam + 9) * (10 * lam + 17))


# ========================================================================
# 3. LAGUERRE
# ========================================================================


def gupta_muldoon(l: LaguerreParams) -> BoundValue:
    """Upper bound on the smallest Laguerre zero; attained (x_11 = alpha+1) at n = 1"""
    n, alpha = l.n, l.alpha

    def formula():
        return (alpha + 1) * (alpha + 2) * (alpha + 4) * (2 * n + alpha + 1) / (
            (5 * alpha + 11) * n * (n + alpha + 1) + (alpha + 1) ** 2 * (alpha + 2)
        )

    return _bound(formula, Quantity.SMALLEST_LAGUERRE_ZERO, Direction.UPPER,
                  BoundSource.GUPTA_MULDOON, [(n >= 1, "requires n >= 1")],
                  boundary_case=n == 1)


# ========================================================================
# 4. CATALOGUE
# ========================================================================


def all_bounds(family: Family, params: AnyParams) -> List[BoundValue]:
    """Every closed-form bound relevant to a family, in a fixed order"""
    if family is Family.JACOBI:
        return [thm1_e1(params), thm1_e2(params), *thm2_bounds(params), thm_a(params),
                driver_jordaan(params), k2_bound(params), k4_lower(params)]
    if family is Family.GEGENBAUER:
        return [thm3(params), cor1(params), cor_a(params), thm_b(params), thm_c(params),
                thm_c_refined(params)]
    if family is Family.LAGUERRE:
        return [gupta_muldoon(params)]
    raise DomainError(f"unknown family {family!r}")
