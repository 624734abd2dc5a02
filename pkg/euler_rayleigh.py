# euler_rayleigh.py
"""
Euler-Rayleigh bracketing of the largest zero of a positive-rooted monic
polynomial, and the resulting enclosure of 1 - x_nn(alpha, beta).

Lower sequence l_k = p_k / p_(k-1) increases to z_n, upper sequence
u_k = p_k^(1/k) decreases to z_n. From exact p_k the roots u_k are taken to
30 significant digits and then rounded up to a float that is certified by an
exact comparison. Float power sums get the same treatment against their exact
binary values, and the float upper end 2 p_k / p_(k+1) is rounded up.
"""

from fractions import Fraction
import logging
import math
from typing import Optional, Tuple

import mpmath

from config import load_settings
from jacobi_models import (
    DomainError,
    InconsistencyError,
    JacobiParams,
    RayleighBracket,
    Scalar,
    TransformedPoly,
)
from poly_core import transformed_coeffs
from power_sums import newton_power_sums

logger = logging.getLogger(__name__)

ROOT_DIGITS = 30
DEFAULT_K = 3

_mp = mpmath.MPContext()
_mp.dps = ROOT_DIGITS

# ========================================================================
# 1. CERTIFIED ROOTS
# ========================================================================


def _integer_root(m: int, k: int) -> Optional[int]:
    """Exact k-th root of a non-negative integer, or None"""
    if m < 2:
        return m
    guess = int(_mp.nint(_mp.root(m, k)))
    for r in (guess - 1, guess, guess + 1):
        if r >= 0 and r ** k == m:
            return r
    return None


def kth_root_upper(value: Scalar, k: int) -> Scalar:
    """
    A number u with u >= value^(1/k). Exact perfect powers come back as an exact
    Fraction; anything else as the smallest float found whose k-th power,
    taken exactly, is at least ``value``.
    """
    if k < 1:
        raise DomainError(f"root order must be >= 1, got {k}")
    if value <= 0:
        raise InconsistencyError(f"power sum must be positive, got {value}")
    if k == 1:
        return value

    if isinstance(value, Fraction):
        num, den = _integer_root(value.numerator, k), _integer_root(value.denominator, k)
        if num is not None and den is not None:
            return Fraction(num, den)
        target = value
        root = _mp.root(_mp.mpf(value.numerator) / value.denominator, k)
    else:
        target = Fraction(float(value))
        root = _mp.root(_mp.mpf(float(value)), k)

    f = float(root)
    while Fraction(f) ** k < target:
        f = math.nextafter(f, math.inf)
    return f


def two_over_lower(u: Scalar) -> Scalar:
    """2/u rounded down, so a certified upper value u gives a certified lower bound"""
    if isinstance(u, Fraction):
        return 2 / u
    d = 2.0 / u
    if isinstance(u, float):
        while Fraction(d) * Fraction(u) > 2:
            d = math.nextafter(d, -math.inf)
    return d


def two_ratio_upper(num: Scalar, den: Scalar) -> Scalar:
    """2 num/den for den > 0, rounded up when either argument is a float"""
    if isinstance(num, Fraction) and isinstance(den, Fraction):
        return 2 * num / den
    r = 2.0 * float(num) / float(den)
    target, exact_den = 2 * Fraction(num), Fraction(den)
    while Fraction(r) * exact_den < target:
        r = math.nextafter(r, math.inf)
    return r


# ========================================================================
# 2. SEQUENCES AND BRACKETS
# ========================================================================


def rayleigh_sequences(P: TransformedPoly, K: Optional[int] = None,
                       k: Optional[int] = None) -> RayleighBracket:
    """
    l_1..l_K and u_1..u_K for the transformed polynomial, with the enclosure
    2/u_k < 1 - x_nn < 2 p_k / p_(k+1) at k = ``k`` (default K-1).
    """
    if K is None:
        K = load_settings().k_max
    if K < 2:
        raise DomainError(f"K must be >= 2, got {K}")
    if k is None:
        k = K - 1
    if not 1 <= k < K:
        raise DomainError(f"k must satisfy 1 <= k < K={K}, got {k}")

    sums = newton_power_sums(P, K)
    for i, value in enumerate(sums.values):
        if value <= 0:
            raise InconsistencyError(
                f"p_{i} = {value} is not positive; the polynomial has a non-positive zero"
            )

    lower_seq = tuple(sums[i] / sums[i - 1] for i in range(1, K + 1))
    upper_seq = tuple(kth_root_upper(sums[i], i) for i in range(1, K + 1))
    lower_1mx = two_over_lower(upper_seq[k - 1])
    upper_1mx = two_ratio_upper(sums[k], sums[k + 1])

    logger.debug("n=%d k=%d enclosure (%s, %s)", P.n, k, lower_1mx, upper_1mx)
    return RayleighBracket(
        lower_seq=lower_seq,
        upper_seq=upper_seq,
        k_used=k,
        lower_1mx=lower_1mx,
        upper_1mx=upper_1mx,
    )


def extreme_zero_bracket(p: JacobiParams, k: int = DEFAULT_K) -> Tuple[Scalar, Scalar]:
    """Open interval (2/p_k^(1/k), 2 p_k / p_(k+1)) containing 1 - x_nn(alpha, beta)"""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    bracket = rayleigh_sequences(transformed_coeffs(p), K=k + 1, k=k)
    return bracket.lower_1mx, bracket.upper_1mx
