# power_sums.py
"""
Power sums p_k of the zeros of a monic polynomial: Newton's identities in
general, explicit formulas for p_1..p_4 in terms of b_1..b_4, and the
closed forms in the substitution variables (a, b, t).

Polynomials in t are ascending coefficient lists, [c_0, c_1, c_2, ...].
"""

from fractions import Fraction
import math
from typing import List, Sequence

from jacobi_models import DomainError, PowerSums, Scalar, TransformedPoly

# ========================================================================
# 1. COEFFICIENT-LIST POLYNOMIALS IN t
# ========================================================================


def poly_normalize(c: List) -> List:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_add(p: Sequence, q: Sequence) -> List:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, v in enumerate(q):
        out[i] = out[i] + v
    return poly_normalize(out)


def poly_scale(p: Sequence, s) -> List:
    return poly_normalize([s * v for v in p])


def poly_mul(p: Sequence, q: Sequence) -> List:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, u in enumerate(p):
        for j, v in enumerate(q):
            out[i + j] = out[i + j] + u * v
    return poly_normalize(out)


def poly_sub(p: Sequence, q: Sequence) -> List:
    return poly_add(p, poly_scale(q, -1))


def poly_eval(p: Sequence, t):
    value = 0
    for c in reversed(p):
        value = value * t + c
    return value


def q2_coeffs(a, b) -> List:
    """q2(t) = 2t^2 + a(2a+3b)t + a^2(a+b)(a+b+1)"""
    return [a * a * (a + b) * (a + b + 1), a * (2 * a + 3 * b), 2]


def q3_coeffs(a, b) -> List:
    """q3(t), the cubic in the closed form of p_4"""
    return [
        a ** 3 * (a + 1) * (a + b) * (a + b + 1) * (a + b + 2),
        a * a * (3 * a ** 3 + 9 * a * a * b + 6 * a * b * b + 6 * a * a
                 + 15 * a * b + 7 * b * b + 2 * a + 4 * b),
        2 * a * (3 * a * a + 5 * a * b + 4 * a + 6 * b),
        5 * a + 6,
    ]


# ========================================================================
# 2. POWER SUMS
# ========================================================================


def newton_power_sums(P: TransformedPoly, K: int) -> PowerSums:
    """
    p_0..p_K from p_r = -sum_{i=1}^{min(r-1,n)} (-1)^i p_(r-i) b_i - (-1)^r r b_r,
    with b_r = 0 for r > n. Float coefficients are summed with math.fsum.
    """
    if K < 1:
        raise DomainError(f"K must be >= 1, got {K}")
    exact = P.exact
    values: List[Scalar] = [Fraction(P.n) if exact else float(P.n)]

    for r in range(1, K + 1):
        terms = []
        for i in range(1, min(r - 1, P.n) + 1):
            term = values[r - i] * P.coeffs[i - 1]
            terms.append(term if i % 2 else -term)
        if r <= P.n:
            term = r * P.coeffs[r - 1]
            terms.append(term if r % 2 else -term)
        values.append(sum(terms, Fraction(0)) if exact else math.fsum(terms))

    return PowerSums(values=tuple(values), degree=P.n)


def closed_form_p(r: int, a: Scalar, b: Scalar, t: Scalar) -> Scalar:
    """p_r for r = 1..4 in terms of a = alpha+1, b = beta+1, t = n(n+alpha+beta+1)"""
    if r not in (1, 2, 3, 4):
        raise DomainError(f"closed forms exist for r in 1..4, got r={r}")
    if a <= 0 or b <= 0 or t <= 0:
        raise DomainError(f"a, b, t must be positive, got a={a} b={b} t={t}")

    if r == 1:
        return t / a
    if r == 2:
        return t * (t + a * (a + b)) / (a * a * (a + 1))
    if r == 3:
        return t * poly_eval(q2_coeffs(a, b), t) / (a ** 3 * (a + 1) * (a + 2))
    return t * poly_eval(q3_coeffs(a, b), t) / (a ** 4 * (a + 1) ** 2 * (a + 2) * (a + 3))


def lemma1_power_sum(r: int, coeffs: Sequence[Scalar]) -> Scalar:
    """p_r from the leading coefficients b_1..b_r; valid when the degree is at least r"""
    if r not in (1, 2, 3, 4):
        raise DomainError(f"formulas exist for r in 1..4, got r={r}")
    if len(coeffs) < r:
        raise DomainError(f"p_{r} needs b_1..b_{r}, got {len(coeffs)} coefficients")

    b1 = coeffs[0]
    if r == 1:
        return b1
    b2 = coeffs[1]
    if r == 2:
        return b1 ** 2 - 2 * b2
    b3 = coeffs[2]
    if r == 3:
        return b1 ** 3 - 3 * b1 * b2 + 3 * b3
    b4 = coeffs[3]
    return b1 ** 4 - 4 * b1 ** 2 * b2 + 2 * b2 ** 2 + 4 * b1 * b3 - 4 * b4
