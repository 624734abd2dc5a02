# zero_oracle.py
"""
Independent high-precision zeros of Jacobi, Gegenbauer and Laguerre
polynomials, used as ground truth for every bound.

Starting values are the eigenvalues of the symmetric tridiagonal
(Golub-Welsch) matrix, found by LAPACK bisection on Sturm counts
(``stebz``). Each is then polished by Newton steps on the recurrence in
50-digit arithmetic and certified by a sign change of the polynomial across
a small interval around the refined zero.
"""

from fractions import Fraction
import logging
import math
from typing import Callable, List, Tuple

import mpmath
import numpy as np
from scipy.linalg import eigh_tridiagonal

from jacobi_models import (
    CertificationError,
    DomainError,
    Family,
    GegenbauerParams,
    JacobiParams,
    LaguerreParams,
    OracleValue,
    Scalar,
    ZeroSet,
)
from poly_core import (
    gegenbauer_as_jacobi,
    jacobi_derivatives,
    laguerre_derivatives,
    transformed_coeffs,
)

logger = logging.getLogger(__name__)

MAX_DEGREE = 200
WORKING_DIGITS = 50
NEWTON_STEPS = 8
# half-width of the certifying interval, relative to max(1, |x|)
CERTIFY_RELATIVE = 1e-30
# largest relative move Newton may make away from the eigenvalue it started at
MAX_DRIFT = 1e-6

_mp = mpmath.MPContext()
_mp.dps = WORKING_DIGITS


def _to_mp(value):
    if isinstance(value, Fraction):
        return _mp.mpf(value.numerator) / value.denominator
    return _mp.mpf(value)


# ========================================================================
# 1. RECURRENCE MATRICES
# ========================================================================


def _check_degree(n: int) -> None:
    if n < 1:
        raise DomainError(f"the oracle needs n >= 1, got n={n}")
    if n > MAX_DEGREE:
        raise DomainError(f"the oracle is capped at n={MAX_DEGREE}, got n={n}")


def jacobi_matrix(p: JacobiParams) -> Tuple[np.ndarray, np.ndarray]:
    """Diagonal and off-diagonal of the symmetric Jacobi matrix for P_n^(alpha,beta)"""
    n = p.n
    alpha, beta = float(p.alpha), float(p.beta)
    s = alpha + beta
    diag = np.empty(n)
    diag[0] = (beta - alpha) / (s + 2)
    for k in range(1, n):
        diag[k] = (beta * beta - alpha * alpha) / ((2 * k + s) * (2 * k + s + 2))

    off = np.empty(max(n - 1, 0))
    if n > 1:
        off[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + s) ** 2 * (3 + s))
    for k in range(2, n):
        off[k - 1] = (4 * k * (k + alpha) * (k + beta) * (k + s)
                      / ((2 * k + s) ** 2 * (2 * k + s + 1) * (2 * k + s - 1)))
    return diag, np.sqrt(off)


def laguerre_matrix(l: LaguerreParams) -> Tuple[np.ndarray, np.ndarray]:
    alpha = float(l.alpha)
    k = np.arange(l.n, dtype=float)
    diag = 2 * k + alpha + 1
    j = np.arange(1, l.n, dtype=float)
    return diag, np.sqrt(j * (j + alpha))


def _eigenvalues(diag: np.ndarray, off: np.ndarray) -> np.ndarray:
    if len(diag) == 1:
        return diag.copy()
    return eigh_tridiagonal(diag, off, eigvals_only=True, lapack_driver="stebz")


# ========================================================================
# 2. REFINEMENT AND CERTIFICATION
# ========================================================================

Evaluator = Callable[[object], Tuple[object, object]]


def _jacobi_evaluator(p: JacobiParams) -> Evaluator:
    def evaluate(x):
        f, df = jacobi_derivatives(p, x, 1, cast=_to_mp)
        return f, df
    return evaluate


def _laguerre_evaluator(l: LaguerreParams) -> Evaluator:
    def evaluate(x):
        f, df = laguerre_derivatives(l, x, 1, cast=_to_mp)
        return f, df
    return evaluate


def _newton(evaluate: Evaluator, start: float):
    x = _mp.mpf(start)
    tolerance = _mp.mpf(10) ** (-(WORKING_DIGITS - 5))
    for _ in range(NEWTON_STEPS):
        f, df = evaluate(x)
        if df == 0:
            raise CertificationError(f"zero derivative during refinement near {start!r}")
        step = f / df
        x -= step
        if abs(step) <= tolerance * max(1, abs(x)):
            break
    if abs(x - start) > MAX_DRIFT * max(1, abs(start)):
        raise CertificationError(f"refinement drifted from {start!r} to {_mp.nstr(x, 20)}")
    return x


def _sign(value) -> int:
    return (value > 0) - (value < 0)


def _to_fraction(x) -> Fraction:
    """Exact value of a binary mpf; ``man_exp`` holds the unsigned mantissa"""
    man, exp = x.man_exp
    return _sign(x) * Fraction(int(man)) * Fraction(2) ** int(exp)


def _certify(evaluate: Evaluator, x, what: str):
    """Points (x - delta, x + delta) at which the polynomial has opposite signs"""
    delta = _mp.mpf(CERTIFY_RELATIVE) * max(1, abs(x))
    lo, hi = x - delta, x + delta
    if _sign(evaluate(lo)[0]) * _sign(evaluate(hi)[0]) >= 0:
        raise CertificationError(f"no sign change around {what} = {_mp.nstr(x, 20)}")
    return lo, hi


def _refine_all(evaluate: Evaluator, starts: np.ndarray, label: str) -> Tuple[List, float]:
    zeros = [_newton(evaluate, float(s)) for s in starts]
    brackets = [_certify(evaluate, x, f"{label} zero {i + 1}") for i, x in enumerate(zeros)]
    for i in range(len(zeros) - 1):
        if brackets[i][1] >= brackets[i + 1][0]:
            raise CertificationError(
                f"{label}: zeros {i + 1} and {i + 2} are not separated after refinement"
            )
    return zeros, _error_bound(zeros, brackets)


def _error_bound(zeros: List, brackets: List) -> float:
    # the true zero is inside its bracket, and the refined value is then rounded to a float
    worst = 0.0
    for x, (lo, hi) in zip(zeros, brackets):
        worst = max(worst, float(max(x - lo, hi - x)) + math.ulp(float(x)) / 2)
    return math.nextafter(worst, math.inf)


# ========================================================================
# 3. PUBLIC ORACLES
# ========================================================================


def jacobi_zeros(p: JacobiParams) -> ZeroSet:
    """All zeros of P_n^(alpha,beta), each certified by a sign change"""
    _check_degree(p.n)
    starts = _eigenvalues(*jacobi_matrix(p))
    zeros, error = _refine_all(_jacobi_evaluator(p), starts, p.label())
    logger.debug("jacobi zeros %s certified to %.3g", p.label(), error)
    return ZeroSet(zeros=tuple(float(x) for x in zeros), certified_abs_error=error,
                   family=Family.JACOBI, params=p)


def gegenbauer_zeros(g: GegenbauerParams) -> ZeroSet:
    jacobi = jacobi_zeros(gegenbauer_as_jacobi(g))
    return ZeroSet(zeros=jacobi.zeros, certified_abs_error=jacobi.certified_abs_error,
                   family=Family.GEGENBAUER, params=g)


def laguerre_zeros(l: LaguerreParams) -> ZeroSet:
    _check_degree(l.n)
    starts = _eigenvalues(*laguerre_matrix(l))
    zeros, error = _refine_all(_laguerre_evaluator(l), starts, l.label())
    logger.debug("laguerre zeros %s certified to %.3g", l.label(), error)
    return ZeroSet(zeros=tuple(float(x) for x in zeros), certified_abs_error=error,
                   family=Family.LAGUERRE, params=l)


def laguerre_smallest_certified(l: LaguerreParams) -> OracleValue:
    """x_1n of L_n^(alpha) with its certifying interval"""
    _check_degree(l.n)
    evaluate = _laguerre_evaluator(l)
    x = _newton(evaluate, float(_eigenvalues(*laguerre_matrix(l))[0]))
    lo, hi = _certify(evaluate, x, f"{l.label()} smallest zero")
    return OracleValue(value=float(x), low=_to_fraction(lo), high=_to_fraction(hi))


def laguerre_smallest_zero(l: LaguerreParams) -> float:
    return laguerre_smallest_certified(l).value


def extreme_zeros(p: JacobiParams) -> Tuple[float, float]:
    """(x_1n, x_nn); only the two extreme zeros are refined and certified"""
    _check_degree(p.n)
    starts = _eigenvalues(*jacobi_matrix(p))
    evaluate = _jacobi_evaluator(p)
    ends = []
    for start, what in ((starts[0], "smallest"), (starts[-1], "largest")):
        x = _newton(evaluate, float(start))
        _certify(evaluate, x, f"{p.label()} {what} zero")
        ends.append(float(x))
    return ends[0], ends[1]


def _largest_shifted(p: JacobiParams):
    """
    s = 1 - x_nn in 50-digit arithmetic, with exact ends (low, high) of an
    interval holding the true value. Newton runs on s itself
    (s <- s + P(1-s)/P'(1-s)), so s is never formed by subtracting two
    numbers close to 1.
    """
    _check_degree(p.n)
    evaluate = _jacobi_evaluator(p)
    start = 1.0 - float(_eigenvalues(*jacobi_matrix(p))[-1])
    if start <= 0:
        start = 1e-300
    s = _mp.mpf(start)
    tolerance = _mp.mpf(10) ** (-(WORKING_DIGITS - 5))
    for _ in range(NEWTON_STEPS):
        f, df = evaluate(1 - s)
        if df == 0:
            raise CertificationError(f"{p.label()}: zero derivative while refining 1 - x_nn")
        step = f / df
        s += step
        if abs(step) <= tolerance * s:
            break

    if s <= 0 or abs(s - start) > MAX_DRIFT * s:
        raise CertificationError(f"{p.label()}: refinement of 1 - x_nn drifted from {start!r}")
    delta = s * _mp.mpf(CERTIFY_RELATIVE)
    x_lo, x_hi = 1 - (s + delta), 1 - (s - delta)
    if _sign(evaluate(x_lo)[0]) * _sign(evaluate(x_hi)[0]) >= 0:
        raise CertificationError(f"no sign change around 1 - x_nn = {_mp.nstr(s, 20)} for {p.label()}")
    return s, 1 - _to_fraction(x_hi), 1 - _to_fraction(x_lo)


def largest_transformed_zero(p: JacobiParams) -> Scalar:
    """z_n = 2/(1 - x_nn); exact t/a for a rational degree-one instance"""
    if p.n == 1 and p.exact:
        P = transformed_coeffs(p)
        return P.t / P.a
    return float(2 / _largest_shifted(p)[0])


def one_minus_largest_certified(p: JacobiParams) -> OracleValue:
    s, low, high = _largest_shifted(p)
    return OracleValue(value=float(s), low=low, high=high)


def one_plus_smallest_certified(p: JacobiParams) -> OracleValue:
    """1 + x_1n(alpha, beta) = 1 - x_nn(beta, alpha)"""
    return one_minus_largest_certified(p.swapped())


def one_minus_largest_sq_certified(g: GegenbauerParams) -> OracleValue:
    """1 - x_nn^2 = s(2 - s); the map rises up to s = 1 and falls after it"""
    s, low, high = _largest_shifted(gegenbauer_as_jacobi(g))
    ends = sorted((low * (2 - low), high * (2 - high)))
    top = Fraction(1) if low <= 1 <= high else ends[1]
    return OracleValue(value=float(s * (2 - s)), low=ends[0], high=top)


def one_minus_largest_zero(p: JacobiParams) -> float:
    return one_minus_largest_certified(p).value


def one_plus_smallest_zero(p: JacobiParams) -> float:
    return one_plus_smallest_certified(p).value


def one_minus_largest_sq(g: GegenbauerParams) -> float:
    return one_minus_largest_sq_certified(g).value
