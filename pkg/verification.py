# verification.py
"""
Verification harness: checks every bound and bracket against the zero
oracle, machine-checks the polynomial identities behind the Jacobi bounds in
exact rational arithmetic, evaluates the derivative inequalities used for
the Gegenbauer lower bound, and measures the large-beta Laguerre limit.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import json
import logging
import math
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from closed_bounds import all_bounds, gupta_muldoon
from config import load_settings, resolve_threads
from euler_rayleigh import rayleigh_sequences
from jacobi_models import (
    AuxiliaryCheck,
    BoundCheck,
    BoundSource,
    BoundValue,
    CertificationError,
    ConsistencyReport,
    Direction,
    DomainError,
    Family,
    GegenbauerParams,
    GridError,
    GridReport,
    GridSpec,
    Identity,
    IdentityViolationError,
    InequalityCheck,
    InstanceReport,
    JacobiParams,
    LaguerreParams,
    LimitReport,
    OracleValue,
    ProofIdentityReport,
    Quantity,
    Scalar,
)
from poly_core import gegenbauer_as_jacobi, jacobi_derivatives, transformed_coeffs
from power_sums import poly_add, poly_eval, poly_mul, poly_scale, poly_sub, q2_coeffs, q3_coeffs
from zero_oracle import (
    extreme_zeros,
    largest_transformed_zero,
    laguerre_smallest_certified,
    laguerre_smallest_zero,
    one_minus_largest_certified,
    one_minus_largest_sq_certified,
    one_plus_smallest_certified,
)

logger = logging.getLogger(__name__)

INEQUALITY_SLACK = 1e-9
POSITIVITY_MAX_N = 40
# allowed spread of successive error ratios around beta_(i+1) / beta_i
RATE_WINDOW = (0.8, 1.2)
IDENTITY_SEED = 20190101

# ========================================================================
# 1. PROOF IDENTITIES
# ========================================================================


def r2_coeffs(a: Fraction, b: Fraction) -> List[Fraction]:
    return [
        a * a * (a + b) * (a + b + 1) * (6 * a * a + a * b + 18 * a + 12),
        a * (3 * a ** 3 + 14 * a * a * b + 6 * a * b * b + 3 * a * a + 27 * a * b
             + 6 * b * b - 6 * a + 6 * b),
        6 * a * a + 5 * a * b + 12 * a + 6 * b,
    ]


def s2_coeffs(a: Fraction, b: Fraction) -> List[Fraction]:
    return [
        a * (a + b) * (a + b + 1) * (4 * a - b + 4),
        2 * a * a + 6 * a * b - b * b - 2 * a + 2 * b,
        4,
    ]


def _difference(a: Fraction, b: Fraction, share: Fraction) -> List[Fraction]:
    """2 q3(t) - (5a+6)(t + share*a*b) q2(t)"""
    linear = [(5 * a + 6) * share * a * b, 5 * a + 6]
    return poly_sub(poly_scale(q3_coeffs(a, b), 2), poly_mul(linear, q2_coeffs(a, b)))


def _check_rationals(a, b) -> Tuple[Fraction, Fraction]:
    if not isinstance(a, Fraction) or not isinstance(b, Fraction):
        raise DomainError("identity checks need exact rationals a, b")
    if a <= 0 or b <= 0:
        raise DomainError(f"a and b must be positive, got a={a} b={b}")
    return a, b


def _degree_values(a: Fraction, b: Fraction, start: int, stop: int = POSITIVITY_MAX_N) -> List[Fraction]:
    return [n * (n + a + b - 1) for n in range(start, stop + 1)]


def verify_identity_r2(a: Fraction, b: Fraction) -> ProofIdentityReport:
    """
    2 q3 - (5a+6)(t + ab/3) q2 = (a/3) r2, coefficient by coefficient, and
    r2(t) > 0 at t = n(n+a+b-1) for n = 4..40.
    """
    a, b = _check_rationals(a, b)
    residual = poly_sub(_difference(a, b, Fraction(1, 3)), poly_scale(r2_coeffs(a, b), a / 3))
    if residual:
        raise IdentityViolationError(f"r2 identity leaves residual {residual} at a={a} b={b}")

    r2 = r2_coeffs(a, b)
    witness = min(poly_eval(r2, t) for t in _degree_values(a, b, 4))
    report = ProofIdentityReport(identity=Identity.R2_IDENTITY, a=a, b=b,
                                 residual_coeffs=tuple(residual), positivity_witness=witness,
                                 branches=("n>=4",))
    if not report.holds:
        raise IdentityViolationError(f"r2 is not positive at a={a} b={b}: minimum {witness}")
    return report


def verify_identity_s2(a: Fraction, b: Fraction) -> ProofIdentityReport:
    """
    2 q3 - (5a+6)(t + ab/2) q2 = (1/2) a^2 (a+2) s2, coefficient by coefficient,
    and s2 > 0 under each hypothesis that applies: b <= 4a+4 with
    t >= 4(a+b+3), or t >= 2(a+b)(a+b+1) with n >= max(4, a+b+1).
    """
    a, b = _check_rationals(a, b)
    s2 = s2_coeffs(a, b)
    residual = poly_sub(_difference(a, b, Fraction(1, 2)), poly_scale(s2, a * a * (a + 2) / 2))
    if residual:
        raise IdentityViolationError(f"s2 identity leaves residual {residual} at a={a} b={b}")

    branches = []
    samples: List[Fraction] = []
    if b <= 4 * a + 4:
        branches.append("b<=4a+4")
        samples.append(4 * (a + b + 3))
        samples.extend(_degree_values(a, b, 4))
    first_n = max(4, math.ceil(a + b + 1))
    branches.append("n>=max(4,a+b+1)")
    samples.append(2 * (a + b) * (a + b + 1))
    samples.extend(_degree_values(a, b, first_n, max(first_n, POSITIVITY_MAX_N)))

    witness = min(poly_eval(s2, t) for t in samples)
    report = ProofIdentityReport(identity=Identity.S2_IDENTITY, a=a, b=b,
                                 residual_coeffs=tuple(residual), positivity_witness=witness,
                                 branches=tuple(branches))
    if not report.holds:
        raise IdentityViolationError(f"s2 is not positive at a={a} b={b}: minimum {witness}")
    return report


def identity_samples(count: int, seed: int = IDENTITY_SEED) -> List[Tuple[Fraction, Fraction]]:
    """Deterministic random rationals (a, b) in (0, 20]^2 with denominators up to 12"""
    rng = np.random.default_rng(seed)
    pairs = []
    for _ in range(count):
        den = rng.integers(1, 13, size=2)
        num = rng.integers(1, 20 * den + 1)
        pairs.append((Fraction(int(num[0]), int(den[0])), Fraction(int(num[1]), int(den[1]))))
    return pairs


# ========================================================================
# 2. DERIVATIVE INEQUALITIES
# ========================================================================


def laguerre_inequality_check(g: GegenbauerParams) -> InequalityCheck:
    """
    3(n-2) f''(x0)^2 - 4(n-1) f'(x0) f'''(x0) >= 0 for f = P_n^(lambda) at its
    largest zero x0. The value is normalized by the sum of the two term
    magnitudes; the check allows -1e-9 slack.
    """
    if g.n < 3:
        raise DomainError(f"the inequality needs n >= 3, got n={g.n}")
    p = gegenbauer_as_jacobi(g)
    _, x0 = extreme_zeros(p)
    _, d1, d2, d3 = jacobi_derivatives(p, x0, 3, cast=float)
    n = g.n
    first = 3 * (n - 2) * d2 * d2
    second = 4 * (n - 1) * d1 * d3
    value = first - second
    scale = abs(first) + abs(second)
    normalized = value / scale if scale else 0.0
    return InequalityCheck(holds=normalized >= -INEQUALITY_SLACK, value=value, normalized=normalized)


def foster_krasikov_weights(n: int, m: int) -> List[Fraction]:
    """(-1)^(m+j) C(2m,j) (n-j)!(n-2m+j)! / ((n-m)!(n-2m)!) for j = 0..2m"""
    if m < 0 or 2 * m > n:
        raise DomainError(f"need 0 <= 2m <= n, got m={m} n={n}")
    f = math.factorial
    denom = f(n - m) * f(n - 2 * m)
    return [
        (-1) ** (m + j) * Fraction(math.comb(2 * m, j) * f(n - j) * f(n - 2 * m + j), denom)
        for j in range(2 * m + 1)
    ]


def foster_krasikov_check(p: JacobiParams, m: int, x) -> InequalityCheck:
    """
    The degree-2m Foster-Krasikov sum of f = P_n^(alpha,beta) at x. Rational
    parameters and a rational x give an exact sum.
    """
    weights = foster_krasikov_weights(p.n, m)
    jet = jacobi_derivatives(p, x, 2 * m)
    terms = [w * jet[j] * jet[2 * m - j] for j, w in enumerate(weights)]
    if all(isinstance(t, Fraction) for t in terms):
        value = sum(terms, Fraction(0))
        scale = sum(abs(t) for t in terms)
    else:
        floats = [float(t) for t in terms]
        value = math.fsum(floats)
        scale = math.fsum(abs(t) for t in floats)
    normalized = float(value / scale) if scale else 0.0
    return InequalityCheck(holds=normalized >= -INEQUALITY_SLACK, value=float(value),
                           normalized=normalized)


def sample_points(count: int = 21) -> List[Fraction]:
    """count equally spaced rationals covering [-1, 1]"""
    return [Fraction(-1) + Fraction(2 * i, count - 1) for i in range(count)]


# ========================================================================
# 3. LAGUERRE LIMIT
# ========================================================================


def laguerre_limit_check(l: LaguerreParams, beta_values: Sequence[Scalar]) -> LimitReport:
    """
    x_1n(alpha) = lim beta / z_n(alpha, beta) as beta grows, with z_n taken from
    the cancellation-free oracle path. Errors should shrink like 1/beta: each
    successive error ratio must stay within RATE_WINDOW of the ratio of the betas.
    """
    betas = list(beta_values)
    if not betas:
        raise DomainError("need at least one beta value")
    for i, beta in enumerate(betas):
        if beta < 100:
            raise DomainError(f"beta values must be >= 100, got {beta}")
        if i and beta <= betas[i - 1]:
            raise DomainError("beta values must be strictly increasing")

    target = laguerre_smallest_zero(l)
    approximations = []
    for beta in betas:
        z = largest_transformed_zero(JacobiParams(alpha=l.alpha, beta=beta, n=l.n))
        approximations.append(float(beta / z))

    errors = [abs(x - target) for x in approximations]
    ratios = [errors[i] / errors[i + 1] if errors[i + 1] else math.inf
              for i in range(len(errors) - 1)]
    monotone = all(errors[i + 1] < errors[i] for i in range(len(errors) - 1))
    low, high = RATE_WINDOW
    rate_ok = all(low <= ratio / float(betas[i + 1] / betas[i]) <= high for i, ratio in enumerate(ratios))
    final = errors[-1] / target
    return LimitReport(target=target, betas=tuple(betas), approximations=tuple(approximations),
                       errors=tuple(errors), error_ratios=tuple(ratios), monotone=monotone,
                       final_relative_error=final, rate_ok=rate_ok,
                       converged=monotone and rate_ok and final < 0.01)


def gupta_muldoon_limit(n: int, a: Scalar) -> Scalar:
    """lim_{b -> inf} b q2(t)/q3(t) = (2n+a) / ((5a+6) n (n+a) + a^2 (a+1))"""
    return (2 * n + a) / ((5 * a + 6) * n * (n + a) + a * a * (a + 1))


def bq2_over_q3(n: int, a: Scalar, b: Scalar) -> Scalar:
    t = n * (n + a + b - 1)
    return b * poly_eval(q2_coeffs(a, b), t) / poly_eval(q3_coeffs(a, b), t)


def gupta_muldoon_consistency(l: LaguerreParams, b_large: Scalar = Fraction(10) ** 8) -> ConsistencyReport:
    """
    The limit times a(a+1)(a+3) must reproduce the Gupta-Muldoon bound exactly,
    and b q2/q3 at a large finite b must approach the limit.
    """
    one = Fraction(1) if l.exact else 1.0
    a = l.alpha + one
    limit = gupta_muldoon_limit(l.n, a)
    finite = bq2_over_q3(l.n, a, b_large)
    relative = abs(float((finite - limit) / limit))
    product = a * (a + 1) * (a + 3) * limit
    bound = gupta_muldoon(l).value
    if l.exact:
        reproduces = product == bound
    else:
        reproduces = math.isclose(float(product), float(bound), rel_tol=1e-12)
    return ConsistencyReport(limit=limit, finite_b_value=finite, relative_error=relative,
                             reproduces_bound=reproduces)


# ========================================================================
# 4. GRIDS
# ========================================================================


def _q(text: str) -> Fraction:
    return Fraction(text)


_PARAMETER_GRID = [_q(v) for v in ("-0.9", "-0.5", "0", "0.5", "1", "2.5", "5", "10")]
_LAMBDA_GRID = [_q(v) for v in ("-0.49", "-0.25", "0", "0.5", "1", "2", "5", "10")]
_LAGUERRE_ALPHAS = [_q(v) for v in ("-0.5", "0", "1", "5")]


def _jacobi_grid(degrees: Iterable[int]) -> List[JacobiParams]:
    return [JacobiParams(alpha=a, beta=b, n=n)
            for n in degrees for a in _PARAMETER_GRID for b in _PARAMETER_GRID]


def _gegenbauer_grid(degrees: Iterable[int]) -> List[GegenbauerParams]:
    return [GegenbauerParams(lam=lam, n=n) for lam in _LAMBDA_GRID for n in degrees]


def _laguerre_grid() -> List[LaguerreParams]:
    return [LaguerreParams(alpha=a, n=n) for a in _LAGUERRE_ALPHAS for n in range(1, 21)]


def builtin_grid(name: str) -> GridSpec:
    """Built-in grids: default, smoke, gegenbauer, laguerre, empty"""
    limits = (LaguerreParams(alpha=0, n=5),)
    if name == "default":
        return GridSpec(jacobi=tuple(_jacobi_grid(range(4, 41, 4))),
                        gegenbauer=tuple(_gegenbauer_grid(range(4, 41, 4))),
                        laguerre=tuple(_laguerre_grid()),
                        k_max=6, identity_samples=100,
                        foster_krasikov_degrees=tuple(range(4, 11)),
                        laguerre_limits=limits)
    if name == "smoke":
        return GridSpec(
            jacobi=(JacobiParams(alpha=0, beta=0, n=4),
                    JacobiParams(alpha=_q("1/2"), beta=_q("-1/2"), n=8),
                    JacobiParams(alpha=5, beta=10, n=12)),
            gegenbauer=(GegenbauerParams(lam=_q("1/2"), n=4),
                        GegenbauerParams(lam=1, n=4),
                        GegenbauerParams(lam=_q("-1/4"), n=10)),
            laguerre=(LaguerreParams(alpha=0, n=1),
                      LaguerreParams(alpha=0, n=2),
                      LaguerreParams(alpha=1, n=5)),
            k_max=4, identity_samples=5, foster_krasikov_degrees=(4,),
            laguerre_limits=limits)
    if name == "gegenbauer":
        return GridSpec(gegenbauer=tuple(_gegenbauer_grid(range(4, 41))), k_max=6)
    if name == "laguerre":
        return GridSpec(laguerre=tuple(_laguerre_grid()), laguerre_limits=limits)
    if name == "empty":
        return GridSpec()
    raise GridError(f"unknown grid {name!r}")


def load_grid(source: str) -> GridSpec:
    """A built-in grid name, or the path of a JSON grid file"""
    path = Path(source)
    if path.suffix.lower() != ".json":
        return builtin_grid(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
        return GridSpec.model_validate(data)
    except FileNotFoundError as exc:
        raise GridError(f"grid file not found: {source}") from exc
    except (json.JSONDecodeError, ValidationError) as exc:
        raise GridError(f"cannot parse grid file {source}: {exc}") from exc


# ========================================================================
# 5. GRID RUNNER
# ========================================================================


def _claim_holds(bound: BoundValue, oracle: OracleValue) -> Optional[bool]:
    """
    Exact comparison against the oracle's certified interval [low, high]:
    True when the bound clears the whole interval, False when it is beyond it
    on the wrong side, None when it falls inside. A boundary case claims
    equality, so inside the interval it holds.
    """
    value = Fraction(bound.value)
    if bound.direction is Direction.LOWER:
        holds, violated = value < oracle.low, value > oracle.high
    else:
        holds, violated = value > oracle.high, value < oracle.low
    if holds:
        return True
    if violated:
        return False
    return True if bound.boundary_case else None


def check_bound(bound: BoundValue, oracle: Dict[Quantity, OracleValue]) -> BoundCheck:
    """Compare one bound with the oracle; bounds that are not claimed get passed=None"""
    observed = oracle.get(bound.quantity)
    shown = None if observed is None else observed.value
    if not bound.applicable or bound.value is None or observed is None:
        return BoundCheck(bound=bound, oracle=shown, passed=None)
    passed = _claim_holds(bound, observed)
    return BoundCheck(bound=bound, oracle=shown, passed=passed, unresolved=passed is None)


def oracle_quantities(family: Family, params) -> Dict[Quantity, OracleValue]:
    """Certified oracle values of every quantity a bound of this family can refer to"""
    if family is Family.JACOBI:
        return {Quantity.ONE_MINUS_XNN: one_minus_largest_certified(params),
                Quantity.ONE_PLUS_X1N: one_plus_smallest_certified(params)}
    if family is Family.GEGENBAUER:
        return {Quantity.ONE_MINUS_XNN: one_minus_largest_certified(gegenbauer_as_jacobi(params)),
                Quantity.ONE_MINUS_XNN_SQ: one_minus_largest_sq_certified(params)}
    return {Quantity.SMALLEST_LAGUERRE_ZERO: laguerre_smallest_certified(params)}


def rayleigh_bounds(p: JacobiParams, ks: Iterable[int]) -> List[BoundValue]:
    """ER_LOWER / ER_UPPER enclosures of 1 - x_nn, one pair per k"""
    P = transformed_coeffs(p)
    bounds = []
    collapsed = p.n == 1
    for k in ks:
        bracket = rayleigh_sequences(P, K=k + 1, k=k)
        for value, direction, source in ((bracket.lower_1mx, Direction.LOWER, BoundSource.ER_LOWER),
                                         (bracket.upper_1mx, Direction.UPPER, BoundSource.ER_UPPER)):
            bounds.append(BoundValue(value=value, quantity=Quantity.ONE_MINUS_XNN,
                                     direction=direction, source=source, applicable=True,
                                     k=k, boundary_case=collapsed))
    return bounds


def checked_bounds(family: Family, params, ks: Iterable[int]) -> List[BoundCheck]:
    """
    Every bound of the family plus the Jacobi brackets at each k, checked
    against the oracle. Bounds are evaluated at the exact value of float
    parameters so that rounding in the bound cannot be mistaken for a failure.
    """
    try:
        oracle = oracle_quantities(family, params)
    except CertificationError as exc:
        raise CertificationError(f"{family.value} {params.label()}: {exc}") from exc

    exact = params.as_exact()
    bounds = all_bounds(family, exact)
    if family is Family.JACOBI:
        bounds += rayleigh_bounds(exact, ks)
    elif family is Family.GEGENBAUER:
        bounds += rayleigh_bounds(gegenbauer_as_jacobi(exact), ks)
    return [check_bound(bound, oracle) for bound in bounds]


def _check_instance(family: Family, params, k_max: int) -> InstanceReport:
    ks = range(1, k_max + 1) if family is Family.JACOBI else ()
    report = InstanceReport(family=family, params=params, checks=tuple(checked_bounds(family, params, ks)))
    if report.failures:
        logger.warning("%s %s: %d bound(s) failed", family.value, params.label(), len(report.failures))
    return report


def _auxiliary_checks(grid: GridSpec) -> List[AuxiliaryCheck]:
    rows: List[AuxiliaryCheck] = []

    for a, b in identity_samples(grid.identity_samples):
        label = f"a={a} b={b}"
        for identity, verify in ((Identity.R2_IDENTITY, verify_identity_r2),
                                 (Identity.S2_IDENTITY, verify_identity_s2)):
            try:
                report = verify(a, b)
                rows.append(AuxiliaryCheck(family=Family.JACOBI, n=0, parameters=label,
                                           check=identity.value,
                                           value=float(report.positivity_witness), passed=True))
            except IdentityViolationError as exc:
                logger.error("%s", exc)
                rows.append(AuxiliaryCheck(family=Family.JACOBI, n=0, parameters=label,
                                           check=identity.value, value=None, passed=False))

    for g in grid.gegenbauer:
        if g.n >= 3:
            result = laguerre_inequality_check(g)
            rows.append(AuxiliaryCheck(family=Family.GEGENBAUER, n=g.n, parameters=g.label(),
                                       check="LAGUERRE_INEQUALITY", value=result.normalized,
                                       passed=result.holds))

    for n in grid.foster_krasikov_degrees:
        legendre = JacobiParams(alpha=0, beta=0, n=n)
        for m in (0, 1, 2):
            worst = min((foster_krasikov_check(legendre, m, x) for x in sample_points()),
                        key=lambda c: c.normalized)
            rows.append(AuxiliaryCheck(family=Family.JACOBI, n=n, parameters=legendre.label(),
                                       check=f"FOSTER_KRASIKOV_M{m}", value=worst.normalized,
                                       passed=worst.holds))

    for l in grid.laguerre_limits:
        limit = laguerre_limit_check(l, [Fraction(100), Fraction(1000), Fraction(10000)])
        rows.append(AuxiliaryCheck(family=Family.LAGUERRE, n=l.n, parameters=l.label(),
                                   check="LAGUERRE_LIMIT", value=limit.final_relative_error,
                                   passed=limit.converged))
        consistency = gupta_muldoon_consistency(l)
        rows.append(AuxiliaryCheck(family=Family.LAGUERRE, n=l.n, parameters=l.label(),
                                   check="GUPTA_MULDOON_LIMIT", value=consistency.relative_error,
                                   passed=consistency.reproduces_bound and consistency.relative_error < 1e-6))
    return rows


def run_grid(grid: GridSpec, threads: Optional[int] = None) -> GridReport:
    """
    Checks every instance of the grid; instances may run on worker threads but
    the report keeps grid order. A certification failure aborts the run.
    """
    jobs = ([(Family.JACOBI, p) for p in grid.jacobi]
            + [(Family.GEGENBAUER, g) for g in grid.gegenbauer]
            + [(Family.LAGUERRE, l) for l in grid.laguerre])
    workers = resolve_threads(load_settings().threads if threads is None else threads)
    logger.info("running %d instance(s) on %d worker(s)", len(jobs), workers)

    if workers == 1 or len(jobs) <= 1:
        instances = [_check_instance(family, params, grid.k_max) for family, params in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            instances = list(pool.map(lambda job: _check_instance(job[0], job[1], grid.k_max), jobs))

    auxiliary = _auxiliary_checks(grid)
    report = GridReport(instances=tuple(instances), auxiliary=tuple(auxiliary))
    logger.info("grid done: %d passed, %d failed, %d not claimed, %d unresolved",
                report.passed, report.failed, report.not_claimed, report.unresolved)
    return report
