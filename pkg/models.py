"""
Schemas and enums for sturmdet reports and run configuration
"""
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator


class Termination(str, Enum):
    ZERO_REMAINDER = "zero_remainder"
    CONSTANT_REACHED = "constant_reached"


class TableMode(str, Enum):
    DERIVATIVE = "derivative"
    PAIR = "pair"


class AssignmentOrigin(str, Enum):
    POLYNOMIAL = "polynomial"
    PAIR = "pair"
    EXPLICIT = "explicit"


class Command(str, Enum):
    STURM = "sturm"
    VERIFY = "verify"
    ROOTS = "roots"
    EULER = "euler"
    BENCH = "bench"


class OutputFormat(str, Enum):
    HUMAN = "human"
    JSON = "json"


def rational_text(value: Any) -> str:
    """Canonical text of an exact rational ("p/q" or an integer)."""
    return str(Fraction(value))


class PolynomialDocument(BaseModel):
    """Shared polynomial file format, coefficients in descending degree order"""
    coeffs: List[str] = Field(..., min_length=1, description="a_n, ..., a_0 as integer or p/q strings")


class IdentityReport(BaseModel):
    """Outcome of one identity instance"""
    identity: str
    params: Dict[str, Any] = Field(default_factory=dict)
    residual: str = Field(..., description="Exact residual; zero means the identity holds")
    passed: bool = False
    seed: Optional[int] = None

    @field_validator("residual", mode="before")
    @classmethod
    def _canonical_residual(cls, value: Any) -> str:
        try:
            return rational_text(value)
        except (TypeError, ValueError, ZeroDivisionError) as e:
            raise ValueError(f"residual is not a rational: {value!r}") from e

    @model_validator(mode="after")
    def _passed_iff_zero(self) -> "IdentityReport":
        self.passed = Fraction(self.residual) == 0
        return self

    @property
    def residual_value(self) -> Fraction:
        return Fraction(self.residual)


class IdentityTally(BaseModel):
    passed: int = 0
    failed: int = 0


class CampaignSummary(BaseModel):
    """Counts for one verification campaign"""
    seed: int
    trials: int
    total: int
    failures: int
    per_identity: Dict[str, IdentityTally]
    passed: bool


class MemberComparison(BaseModel):
    """One chain member computed by both routes"""
    index: int
    euclid: Optional[List[str]] = None
    determinantal: Optional[List[str]] = None
    equal: bool
    gamma: Optional[str] = None
    c: Optional[str] = None
    leading_matches: Optional[bool] = None


class ChainReport(BaseModel):
    """Euclidean and determinantal chains side by side"""
    polynomial: List[str]
    second: Optional[List[str]] = None
    mode: TableMode
    termination: Termination
    degrees: List[int]
    quotients: List[List[str]]
    members: List[MemberComparison]
    all_equal: bool
    degenerate_index: Optional[int] = None
    degenerate_witness: Optional[str] = None


class RootReport(BaseModel):
    """Distinct real roots of a polynomial on an interval"""
    polynomial: List[str]
    interval: Tuple[str, str]
    count: int
    intervals: List[Tuple[str, str]]


class ConvergencePoint(BaseModel):
    n: int
    value: str
    deviation: str


class ConvergenceReport(BaseModel):
    """Exact values approaching a limit along a list of n"""
    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    limit: str
    points: List[ConvergencePoint]
    ratios: List[Optional[str]]
    passed: bool


class FactorizationRow(BaseModel):
    m: int
    c_inf: str
    hilbert_variant: str
    factor: str
    equal: bool


class EulerReport(BaseModel):
    """Euler polynomial, hypergeometric and Cauchy determinant checks"""
    euler_hypergeom: List[IdentityReport]
    gauss_even: List[IdentityReport]
    cauchy: List[IdentityReport]
    factorization: List[FactorizationRow]
    hilbert_variant: Dict[str, str]
    r_limits: Dict[str, str]
    asymptotic: ConvergenceReport
    beta: List[ConvergenceReport]
    cos_limit: ConvergenceReport
    passed: bool


class RunConfig(BaseModel):
    """Validated command-line configuration"""
    command: Command
    input_path: Optional[str] = None
    coeffs: Optional[str] = None
    pair: Optional[str] = None
    seed: int = Field(..., ge=0, lt=2 ** 64, description="64-bit master seed")
    trials: Optional[int] = Field(None, ge=1)
    degree_range: Optional[Tuple[int, int]] = None
    m: int = Field(1, ge=1)
    n_list: List[int] = Field(default_factory=list)
    interval: Optional[Tuple[str, str]] = None
    output: OutputFormat = OutputFormat.HUMAN
    out_path: Optional[str] = None
    workers: int = Field(1, ge=1)
    inject_violation: bool = False

    @field_validator("degree_range")
    @classmethod
    def _check_degree_range(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is None:
            return value
        low, high = value
        if low < 2:
            raise ValueError("degree range must start at 2 or above")
        if low > high:
            raise ValueError("degree range is empty")
        return value

    @field_validator("n_list")
    @classmethod
    def _check_n_list(cls, value: List[int]) -> List[int]:
        if any(n < 1 for n in value):
            raise ValueError("n values must be positive")
        if value != sorted(set(value)):
            raise ValueError("n values must be strictly increasing")
        return value
