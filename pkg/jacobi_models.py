# jacobi_models.py
"""
Structured parameter, polynomial, bound and report models shared by every module.

Scalars are either exact rationals (``fractions.Fraction``) or 64-bit floats.
Integers and ``"p/q"`` strings are promoted to ``Fraction`` so that rational
input always takes the exact path.
"""

from enum import Enum
from fractions import Fraction
import math
import numbers
from typing import ClassVar, List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

Scalar = Union[Fraction, float]

# Float inputs closer than this to the lower end of the parameter range are
# rejected: the fourth power sum divides by a^4 and loses all digits there.
FLOAT_DEGENERACY_GAP = 1e-8

# ========================================================================
# 1. ERRORS
# ========================================================================


class ExtremalZerosError(Exception):
    """Base class for every error raised by this package"""


class DomainError(ExtremalZerosError, ValueError):
    """An argument lies outside the range where an operation is defined"""


class InconsistencyError(ExtremalZerosError, ArithmeticError):
    """Internal arithmetic produced a value that valid input can never produce"""


class CertificationError(ExtremalZerosError):
    """The zero oracle could not certify a zero by a sign change"""


class IdentityViolationError(ExtremalZerosError):
    """A proof identity left a nonzero residual coefficient"""


class ConfigError(ExtremalZerosError):
    """Malformed environment configuration"""


class GridError(ExtremalZerosError):
    """Unknown built-in grid or unparsable grid file"""


# ========================================================================
# 2. SCALAR HELPERS
# ========================================================================


def as_scalar(value) -> Scalar:
    """Promote ints and rational strings to Fraction, keep floats as floats"""
    if isinstance(value, bool):
        raise DomainError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text or text.lstrip("+-").isdigit():
                return Fraction(text)
            return float(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse scalar {value!r}") from exc
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"scalar must be finite, got {value!r}")
        return value
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"cannot interpret {value!r} as a scalar") from exc


def is_exact(*values) -> bool:
    return all(isinstance(v, Fraction) for v in values)


def _check_above(value: Scalar, floor: Fraction, name: str) -> Scalar:
    if value <= floor:
        raise ValueError(f"{name} must exceed {floor}, got {value}")
    if isinstance(value, float) and value - float(floor) < FLOAT_DEGENERACY_GAP:
        raise ValueError(
            f"{name}={value!r} is within {FLOAT_DEGENERACY_GAP} of {floor}; "
            "pass it as an exact rational ('p/q') instead"
        )
    return value


# ========================================================================
# 3. PARAMETER MODELS
# ========================================================================


class _Params(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    @field_validator("*", mode="before")
    @classmethod
    def _promote(cls, value, info):
        if info.field_name == "n":
            return value
        return as_scalar(value)

    def as_exact(self):
        """The same parameters with every float replaced by its exact binary value"""
        fields = {k: Fraction(v) if isinstance(v, float) else v for k, v in dict(self).items()}
        return type(self)(**fields)


class JacobiParams(_Params):
    """Jacobi polynomial P_n^(alpha, beta); degree 0 is allowed for evaluation only"""
    alpha: Scalar
    beta: Scalar
    n: int = Field(ge=0)

    @field_validator("alpha", "beta")
    @classmethod
    def _above_minus_one(cls, value, info):
        return _check_above(value, Fraction(-1), info.field_name)

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha, self.beta)

    def swapped(self) -> "JacobiParams":
        """Parameters of P_n^(beta, alpha), the reflection x -> -x"""
        return JacobiParams(alpha=self.beta, beta=self.alpha, n=self.n)

    def label(self) -> str:
        return f"n={self.n} alpha={self.alpha} beta={self.beta}"


class GegenbauerParams(_Params):
    """Gegenbauer (ultraspherical) polynomial P_n^(lambda)"""
    lam: Scalar
    n: int = Field(ge=0)

    @field_validator("lam")
    @classmethod
    def _above_minus_half(cls, value):
        return _check_above(value, Fraction(-1, 2), "lambda")

    @property
    def exact(self) -> bool:
        return is_exact(self.lam)

    def label(self) -> str:
        return f"n={self.n} lambda={self.lam}"


class LaguerreParams(_Params):
    """Laguerre polynomial L_n^(alpha)"""
    alpha: Scalar
    n: int = Field(ge=0)

    @field_validator("alpha")
    @classmethod
    def _above_minus_one(cls, value):
        return _check_above(value, Fraction(-1), "alpha")

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha)

    def label(self) -> str:
        return f"n={self.n} alpha={self.alpha}"


AnyParams = Union[JacobiParams, GegenbauerParams, LaguerreParams]

# ========================================================================
# 4. POLYNOMIAL MODELS
# ========================================================================


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class TransformedPoly(_Frozen):
    """
    Monic polynomial z^n - b_1 z^(n-1) + b_2 z^(n-2) - ... whose zeros are
    z_i = 2 / (1 - x_in(alpha, beta)), together with a = alpha+1, b = beta+1
    and t = n(n + alpha + beta + 1).
    """
    n: int = Field(ge=1)
    coeffs: Tuple[Scalar, ...]
    a: Scalar
    b: Scalar
    t: Scalar

    @property
    def exact(self) -> bool:
        return is_exact(self.a, self.b, self.t, *self.coeffs)

    def coeff(self, i: int) -> Scalar:
        """b_i with the convention b_i = 0 for i > n"""
        if i < 1:
            raise DomainError(f"coefficient index starts at 1, got {i}")
        if i > self.n:
            return Fraction(0) if self.exact else 0.0
        return self.coeffs[i - 1]


class PowerSums(_Frozen):
    """Power sums p_0..p_K of the zeros of a monic polynomial"""
    values: Tuple[Scalar, ...]
    degree: int

    @property
    def K(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> Scalar:
        return self.values[k]


class RayleighBracket(_Frozen):
    """
    Euler-Rayleigh sequences l_k = p_k/p_(k-1) (increasing, below z_n) and
    u_k = p_k^(1/k) (decreasing, above z_n), and the resulting enclosure of
    1 - x_nn built from u_k and l_(k+1).
    """
    lower_seq: Tuple[Scalar, ...]
    upper_seq: Tuple[Scalar, ...]
    k_used: int
    lower_1mx: Scalar
    upper_1mx: Scalar

    @property
    def width(self) -> float:
        return float(self.upper_1mx) - float(self.lower_1mx)


# ========================================================================
# 5. BOUNDS
# ========================================================================


class Quantity(str, Enum):
    ONE_MINUS_XNN = "ONE_MINUS_XNN"
    ONE_PLUS_X1N = "ONE_PLUS_X1N"
    ONE_MINUS_XNN_SQ = "ONE_MINUS_XNN_SQ"
    SMALLEST_LAGUERRE_ZERO = "SMALLEST_LAGUERRE_ZERO"


class Direction(str, Enum):
    UPPER = "UPPER"
    LOWER = "LOWER"


class BoundSource(str, Enum):
    THM1_E1 = "THM1_E1"
    THM1_E2 = "THM1_E2"
    THM2_E1 = "THM2_E1"
    THM2_E2 = "THM2_E2"
    THM3 = "THM3"
    COR1 = "COR1"
    THM_A = "THM_A"
    COR_A = "COR_A"
    THM_B = "THM_B"
    THM_C = "THM_C"
    THM_C_REFINED = "THM_C_REFINED"
    GUPTA_MULDOON = "GUPTA_MULDOON"
    DRIVER_JORDAAN = "DRIVER_JORDAAN"
    K2_BOUND = "K2_BOUND"
    K4_LOWER = "K4_LOWER"
    ER_UPPER = "ER_UPPER"
    ER_LOWER = "ER_LOWER"


class BoundValue(_Frozen):
    """
    One evaluated closed-form bound. UPPER means the true quantity is strictly
    below ``value``, LOWER strictly above. ``boundary_case`` marks parameter
    points where the stated strict inequality is attained with equality;
    ``experimental`` marks bounds that only hold non-strictly.
    """
    value: Optional[Scalar]
    quantity: Quantity
    direction: Direction
    source: BoundSource
    applicable: bool
    reason: str = ""
    k: Optional[int] = None
    boundary_case: bool = False
    experimental: bool = False

    @property
    def method(self) -> str:
        return self.source.value if self.k is None else f"{self.source.value}_K{self.k}"


class RatioDecomposition(_Frozen):
    """r(lambda, n) = rho(lambda) * phi(lambda, n), the ratio COR1 / THM_C"""
    rho: Scalar
    phi: Scalar
    r: Scalar


# ========================================================================
# 6. ORACLE
# ========================================================================


class Family(str, Enum):
    JACOBI = "JACOBI"
    GEGENBAUER = "GEGENBAUER"
    LAGUERRE = "LAGUERRE"


class ZeroSet(_Frozen):
    """Sorted zeros, each certified by a sign change within certified_abs_error"""
    zeros: Tuple[float, ...]
    certified_abs_error: float
    family: Family
    params: AnyParams

    @property
    def smallest(self) -> float:
        return self.zeros[0]

    @property
    def largest(self) -> float:
        return self.zeros[-1]


class OracleValue(_Frozen):
    """
    A certified oracle quantity: the true value lies in the closed interval
    [low, high] with exact rational ends; ``value`` is the float for display.
    """
    value: float
    low: Fraction
    high: Fraction

    def contains(self, x: Scalar) -> bool:
        return self.low <= Fraction(x) <= self.high


# ========================================================================
# 7. VERIFICATION REPORTS
# ========================================================================


class Identity(str, Enum):
    R2_IDENTITY = "R2_IDENTITY"
    S2_IDENTITY = "S2_IDENTITY"


class ProofIdentityReport(_Frozen):
    """Residual of a proof identity as coefficients in t, plus a positivity witness"""
    identity: Identity
    a: Fraction
    b: Fraction
    residual_coeffs: Tuple[Fraction, ...]
    positivity_witness: Optional[Fraction] = None
    branches: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return all(c == 0 for c in self.residual_coeffs) and (
            self.positivity_witness is None or self.positivity_witness > 0
        )


class InequalityCheck(_Frozen):
    """Value of a derivative inequality and its value relative to the term scale"""
    holds: bool
    value: float
    normalized: float


class ConsistencyReport(_Frozen):
    """The closed-form large-beta limit against b*q2(t)/q3(t) at one finite b"""
    limit: Scalar
    finite_b_value: Scalar
    relative_error: float
    reproduces_bound: bool


class LimitReport(_Frozen):
    """Convergence of beta / z_n towards the smallest Laguerre zero"""
    target: float
    betas: Tuple[Scalar, ...]
    approximations: Tuple[float, ...]
    errors: Tuple[float, ...]
    error_ratios: Tuple[float, ...]
    monotone: bool
    final_relative_error: float
    rate_ok: bool
    converged: bool


class BoundCheck(_Frozen):
    """
    A bound compared against the oracle. ``passed`` is None when the bound is
    not claimed, or when ``unresolved``: the bound lies inside the oracle's
    certified interval, so the comparison cannot decide it.
    """
    bound: BoundValue
    oracle: Optional[float]
    passed: Optional[bool]
    unresolved: bool = False


class InstanceReport(_Frozen):
    family: Family
    params: AnyParams
    checks: Tuple[BoundCheck, ...]

    @property
    def failures(self) -> List[BoundCheck]:
        return [c for c in self.checks if c.passed is False]


class OutputRecord(_Frozen):
    """One row of machine-readable output, in fixed column order"""
    family: str
    n: int
    parameters: str
    quantity: str
    method: str
    value: str
    direction: str
    applicable: str
    oracle: str
    passed: str

    COLUMNS: ClassVar[Tuple[str, ...]] = ("family", "n", "parameters", "quantity", "method", "value",
               "direction", "applicable", "oracle", "pass")

    def as_row(self) -> List[str]:
        return [self.family, str(self.n), self.parameters, self.quantity, self.method,
                self.value, self.direction, self.applicable, self.oracle, self.passed]


class AuxiliaryCheck(_Frozen):
    """Result of a check that is not a bound: identities, derivative inequalities, limits"""
    family: Family
    n: int
    parameters: str
    check: str
    value: Optional[float]
    passed: bool


class GridSpec(BaseModel):
    """
    A verification grid. Parameter lists may be given as dicts in JSON files;
    Gegenbauer entries accept either "lambda" or "lam".
    """
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    jacobi: Tuple[JacobiParams, ...] = ()
    gegenbauer: Tuple[GegenbauerParams, ...] = ()
    laguerre: Tuple[LaguerreParams, ...] = ()
    k_max: int = Field(default=6, ge=1, le=12)
    identity_samples: int = Field(default=0, ge=0)
    foster_krasikov_degrees: Tuple[int, ...] = ()
    laguerre_limits: Tuple[LaguerreParams, ...] = ()

    @field_validator("gegenbauer", mode="before")
    @classmethod
    def _lambda_key(cls, entries):
        renamed = []
        for entry in entries or ():
            if isinstance(entry, dict) and "lambda" in entry:
                entry = {("lam" if k == "lambda" else k): v for k, v in entry.items()}
            renamed.append(entry)
        return renamed

    @field_validator("foster_krasikov_degrees")
    @classmethod
    def _degrees_at_least_four(cls, degrees):
        for n in degrees:
            if n < 4:
                raise ValueError(f"Foster-Krasikov degrees start at 4, got {n}")
        return degrees

    @property
    def size(self) -> int:
        return len(self.jacobi) + len(self.gegenbauer) + len(self.laguerre)


class GridReport(_Frozen):
    instances: Tuple[InstanceReport, ...] = ()
    auxiliary: Tuple[AuxiliaryCheck, ...] = ()

    @property
    def passed(self) -> int:
        return sum(c.passed is True for inst in self.instances for c in inst.checks)

    @property
    def failed(self) -> int:
        return sum(c.passed is False for inst in self.instances for c in inst.checks)

    @property
    def not_claimed(self) -> int:
        return sum(c.passed is None and not c.unresolved for inst in self.instances for c in inst.checks)

    @property
    def unresolved(self) -> int:
        return sum(c.unresolved for inst in self.instances for c in inst.checks)

    @property
    def ok(self) -> bool:
        return self.failed == 0 and all(r.passed for r in self.auxiliary)

    def first_failure(self) -> Optional[Tuple[InstanceReport, BoundCheck]]:
        for inst in self.instances:
            for check in inst.checks:
                if check.passed is False:
                    return inst, check
        return None
