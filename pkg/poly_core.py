# poly_core.py
"""
Classical orthogonal polynomials and the transformed polynomial in z = 2/(1-x).

Everything here is arithmetic-generic: rational parameters and rational
arguments stay in ``Fraction``; anything else is evaluated in float unless a
``cast`` (for example an mpmath constructor) is passed explicitly.
"""

from fractions import Fraction
import logging
import math
from typing import Callable, List, Optional, Tuple

from jacobi_models import (
    DomainError,
    GegenbauerParams,
    JacobiParams,
    LaguerreParams,
    Scalar,
    TransformedPoly,
)

logger = logging.getLogger(__name__)

Cast = Callable[[Scalar], object]
Recurrence = Tuple[Tuple[object, object], List[Tuple[object, object, object]]]

# ========================================================================
# 1. HELPERS
# ========================================================================


def pochhammer(x, k: int):
    """Rising factorial (x)_k = x(x+1)...(x+k-1) by repeated multiplication"""
    if k < 0:
        raise DomainError(f"Pochhammer order must be >= 0, got {k}")
    result = x * 0 + 1
    for i in range(k):
        result = result * (x + i)
    return result


def _cast_for(exact_params: bool, x) -> Cast:
    if exact_params and isinstance(x, (Fraction, int)):
        return Fraction
    return float


# ========================================================================
# 2. TRANSFORMED POLYNOMIAL
# ========================================================================


def transformed_coeffs(p: JacobiParams) -> TransformedPoly:
    """
    Coefficients b_i = C(n,i) (n+alpha+beta+1)_i / (alpha+1)_i of the monic
    polynomial whose zeros are 2/(1 - x_in). The running ratio
    b_i / b_(i-1) = (n-i+1)/i * (n+alpha+beta+i)/(alpha+i) is the same
    product as the Pochhammer definition, one factor at a time.
    """
    if p.n < 1:
        raise DomainError(f"transformed polynomial needs n >= 1, got n={p.n}")
    n, alpha, beta = p.n, p.alpha, p.beta
    one = Fraction(1) if p.exact else 1.0
    a = alpha + one
    b = beta + one
    t = n * (n + alpha + beta + one)

    coeffs = []
    current = one
    for i in range(1, n + 1):
        current = current * (n - i + 1) / i * (n + alpha + beta + i) / (alpha + i)
        coeffs.append(current)

    logger.debug("transformed coefficients for %s: b_1=%s", p.label(), coeffs[0])
    return TransformedPoly(n=n, coeffs=tuple(coeffs), a=a, b=b, t=t)


def map_zero_back(z: Scalar) -> Scalar:
    """x = 1 - 2/z, the inverse of z = 2/(1-x)"""
    if z <= 0:
        raise DomainError(f"transformed zeros are positive, got z={z}")
    return 1 - 2 / z


def gegenbauer_as_jacobi(g: GegenbauerParams) -> JacobiParams:
    """P_n^(lambda) is a constant multiple of P_n^(alpha,alpha), alpha = lambda - 1/2"""
    half = Fraction(1, 2) if g.exact else 0.5
    alpha = g.lam - half
    return JacobiParams(alpha=alpha, beta=alpha, n=g.n)


# ========================================================================
# 3. THREE-TERM RECURRENCES
# ========================================================================


def jacobi_recurrence(p: JacobiParams, cast: Cast) -> Recurrence:
    """
    ((c1, c0), [(A_k, B_k, C_k), ...]) with P_1 = c1 x + c0 and
    P_(k+1) = (A_k x + B_k) P_k - C_k P_(k-1) for k = 1..n-1.
    """
    alpha, beta = cast(p.alpha), cast(p.beta)
    s = alpha + beta
    first = ((s + 2) / 2, (alpha - beta) / 2)
    steps = []
    for k in range(1, max(p.n, 1)):
        denom = 2 * (k + 1) * (k + s + 1) * (2 * k + s)
        A = (2 * k + s + 1) * (2 * k + s + 2) * (2 * k + s) / denom
        B = (2 * k + s + 1) * (alpha * alpha - beta * beta) / denom
        C = 2 * (k + alpha) * (k + beta) * (2 * k + s + 2) / denom
        steps.append((A, B, C))
    return first, steps


def laguerre_recurrence(l: LaguerreParams, cast: Cast) -> Recurrence:
    """Same layout as jacobi_recurrence, for (k+1) L_(k+1) = (2k+1+alpha-x) L_k - (k+alpha) L_(k-1)"""
    alpha = cast(l.alpha)
    one = cast(1)
    first = (-one, one + alpha)
    steps = []
    for k in range(1, max(l.n, 1)):
        steps.append((-one / (k + 1), (2 * k + 1 + alpha) / (k + 1), (k + alpha) / (k + 1)))
    return first, steps


def three_term_jet(recurrence: Recurrence, n: int, x, order: int) -> list:
    """
    Value and derivatives [f, f', ..., f^(order)] of the degree-n member of a
    three-term family, by differentiating the recurrence:
    D^j[(A x + B) P] = (A x + B) P^(j) + j A P^(j-1).
    """
    if order < 0:
        raise DomainError(f"derivative order must be >= 0, got {order}")
    zero = x * 0
    one = zero + 1
    prev = [one] + [zero] * order
    if n == 0:
        return prev

    (c1, c0), steps = recurrence
    cur = [c1 * x + c0] + [zero] * order
    if order >= 1:
        cur[1] = zero + c1

    for A, B, C in steps[: n - 1]:
        lin = A * x + B
        nxt = [lin * cur[0] - C * prev[0]]
        for j in range(1, order + 1):
            nxt.append(lin * cur[j] + j * A * cur[j - 1] - C * prev[j])
        prev, cur = cur, nxt
    return cur


# ========================================================================
# 4. EVALUATION
# ========================================================================


def jacobi_derivatives(p: JacobiParams, x, order: int, cast: Optional[Cast] = None) -> list:
    """[P, P', ..., P^(order)] of P_n^(alpha,beta) at x"""
    cast = cast or _cast_for(p.exact, x)
    return three_term_jet(jacobi_recurrence(p, cast), p.n, cast(x), order)


def jacobi_eval_recurrence(p: JacobiParams, x, cast: Optional[Cast] = None):
    """P_n^(alpha,beta)(x) by the standard three-term recurrence"""
    return jacobi_derivatives(p, x, 0, cast)[0]


def laguerre_derivatives(l: LaguerreParams, x, order: int, cast: Optional[Cast] = None) -> list:
    cast = cast or _cast_for(l.exact, x)
    return three_term_jet(laguerre_recurrence(l, cast), l.n, cast(x), order)


def laguerre_eval_recurrence(l: LaguerreParams, x, cast: Optional[Cast] = None):
    return laguerre_derivatives(l, x, 0, cast)[0]


def jacobi_eval_hypergeometric(p: JacobiParams, x) -> Scalar:
    """
    P_n^(alpha,beta)(x) = (alpha+1)_n / n! * 2F1(-n, n+alpha+beta+1; alpha+1; (1-x)/2).

    The series terminates at k = n. With rational parameters the sum is formed
    exactly (float arguments are converted exactly) and rounded once at the end.
    """
    n = p.n
    if p.exact:
        xq = Fraction(x)
        value = _hypergeometric_terms(n, p.alpha, p.beta, (1 - xq) / 2, Fraction(1))
        total = sum(value, Fraction(0))
        return total if isinstance(x, (Fraction, int)) else float(total)

    alpha, beta = float(p.alpha), float(p.beta)
    terms = _hypergeometric_terms(n, alpha, beta, (1.0 - float(x)) / 2.0, 1.0)
    return math.fsum(terms)


def _hypergeometric_terms(n: int, alpha, beta, z, one) -> List:
    prefactor = one
    for i in range(n):
        prefactor = prefactor * (alpha + 1 + i) / (i + 1)

    terms = [prefactor]
    term = prefactor
    for k in range(n):
        term = term * (k - n) * (n + alpha + beta + 1 + k) / ((alpha + 1 + k) * (k + 1)) * z
        terms.append(term)
    return terms
