"""
Pydantic models for results, output documents and service requests
"""
from datetime import timedelta
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, FrozenSet, List, Optional, Tuple

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    PositiveInt,
    WithJsonSchema,
    computed_field,
    field_serializer,
    field_validator,
    model_validator,
)

from words import Word


def render_ratio(value: Fraction) -> str:
    """Exact "p/q" text form of a rational, always with a denominator"""
    return f"{value.numerator}/{value.denominator}"


def _parse_ratio(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not ratios")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except ZeroDivisionError:
            raise ValueError(f"{value!r} has a zero denominator")
    raise ValueError(f"cannot read {value!r} as an exact ratio")


def _parse_nat(value: Any) -> int:
    if isinstance(value, str):
        return int(value)
    return value


ExactRatio = Annotated[
    Fraction,
    BeforeValidator(_parse_ratio),
    PlainSerializer(render_ratio, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string", "pattern": r"^-?\d+/\d+$"}),
]

ExactNat = Annotated[
    int,
    Field(ge=0),
    BeforeValidator(_parse_nat),
    PlainSerializer(str, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string", "pattern": r"^\d+$"}),
]


def _render_word_set(words: FrozenSet[Word]) -> List[str]:
    return [str(w) for w in sorted(words)]


class Termination(str, Enum):
    """Why the Sardinas-Patterson iteration stopped"""
    EMPTY_DANGLING_SET = "EmptyDanglingSet"
    REPEATED_DANGLING_SET = "RepeatedDanglingSet"
    INTERSECTION_WITH_D0 = "IntersectionWithD0"
    DUPLICATE_CODEWORDS = "DuplicateCodewords"


class RhoMethod(str, Enum):
    CLOSED_FORM = "ClosedForm"
    ENUMERATION = "Enumeration"


class Family(str, Enum):
    """Length-distribution families whose ratios approach the lower bound"""
    FAMILY_11C = "11c"
    FAMILY_12C_BINARY = "12c"


class CountKind(str, Enum):
    UD = "ud"
    PR = "pr"


class CountMethod(str, Enum):
    FORMULA = "formula"
    ENUMERATE = "enumerate"
    BOTH = "both"


class SPVerdict(BaseModel):
    """Sardinas-Patterson decision with the dangling-set trace"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    is_code: bool = Field(..., description="Whether the sequence is uniquely decodable")
    trace: Tuple[FrozenSet[Word], ...] = Field(..., description="Dangling sets D_0, D_1, ...")
    termination: Termination = Field(..., description="Reason the iteration stopped")

    @field_serializer("trace", when_used="json")
    def _serialize_trace(self, trace):
        return [_render_word_set(d) for d in trace]


class FactorizationWitness(BaseModel):
    """A word with two different factorizations into codewords (0-based indices)"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    word: Word = Field(..., description="The ambiguous word")
    factorization_a: Tuple[int, ...] = Field(..., description="First index sequence")
    factorization_b: Tuple[int, ...] = Field(..., description="Second index sequence")

    @field_serializer("word", when_used="json")
    def _serialize_word(self, word: Word) -> str:
        return str(word)

    @model_validator(mode="after")
    def _check_distinct(self):
        if self.factorization_a == self.factorization_b:
            raise ValueError("The two factorizations must differ")
        return self


class CensusResult(BaseModel):
    """Exhaustive counts of codes and prefix codes for one length distribution"""
    n: int = Field(..., ge=2, description="Alphabet size")
    lengths: Tuple[int, ...] = Field(..., description="Length distribution L")
    total_tuples: ExactNat = Field(..., description="n to the power sum(L)")
    ud_count: ExactNat = Field(..., description="|UD_n(L)|")
    pr_count: ExactNat = Field(..., description="|PR_n(L)|")
    elapsed: timedelta = Field(default=timedelta(0), description="Wall-clock time of the sweep")

    @model_validator(mode="after")
    def _check_order(self):
        if not self.pr_count <= self.ud_count <= self.total_tuples:
            raise ValueError("Expected pr_count <= ud_count <= total_tuples")
        return self


class NudReport(BaseModel):
    """The eight slices K_{x,yz}(c) of the binary non-codes with lengths (1,2,c)"""
    c: int = Field(..., ge=1)
    k_counts: Dict[str, ExactNat] = Field(..., description="|K_{x,yz}(c)| keyed by 'x,yz'")
    nud_count: ExactNat = Field(..., description="|NUD(c)| from the census")
    ud_count: ExactNat = Field(..., description="|UD_2((1,2,c))| from the census")
    decomposition_holds: bool = Field(..., description="|NUD| = 2^(c+1) + 2|K_1,00| + 4|K_1,01|")
    symmetry_holds: bool = Field(..., description="Symmetry classes of the eight slices")
    closed_form_holds: bool = Field(..., description="Slices match the Fibonacci closed forms")

    @computed_field
    @property
    def passed(self) -> bool:
        return self.decomposition_holds and self.symmetry_holds and self.closed_form_holds


class RhoResult(BaseModel):
    """Exact proportion of prefix codes among codes"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(..., ge=2)
    lengths: Tuple[int, ...]
    rho: ExactRatio
    method: RhoMethod
    pr_count: ExactNat
    ud_count: ExactNat


class PointOutcome(BaseModel):
    """Result of checking a claim at one grid point"""
    point: str = Field(..., description="Grid point label, e.g. 'n=2 L=(1,2,3)'")
    values: Dict[str, str] = Field(default_factory=dict, description="Exact values involved")
    passed: bool


class VerificationReport(BaseModel):
    """Outcome of checking one claim over a grid"""
    claim: str
    grid: str = Field(..., description="Human-readable grid description")
    points: List[PointOutcome] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)

    @property
    def failures(self) -> List[PointOutcome]:
        return [p for p in self.points if not p.passed]


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c: int
    rho: ExactRatio
    rho_decimal: str
    gap: ExactRatio = Field(..., description="|rho - limit|, exact")
    gap_decimal: str


class ConvergenceTable(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    family: Family
    n: int
    limit: ExactRatio
    digits: int = Field(..., description="Decimal places, rounded half-even")
    rows: List[ConvergenceRow]
    strictly_decreasing: bool = Field(..., description="Whether the gap strictly decreases in c")


class OutputDocument(BaseModel):
    """Structured result of one CLI command or service call"""
    command: str = Field(..., description="Command that produced this document")
    inputs: Dict[str, Any] = Field(default_factory=dict)
    results: Dict[str, Any] = Field(default_factory=dict)
    status: str = Field(default="ok", description="ok, pass, fail or error")
    timing: float = Field(default=0.0, description="Seconds; excluded from comparisons")

    def comparable(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude={"timing"})


class DecideRequest(BaseModel):
    """Request model for the decide endpoint"""
    n: int = Field(..., ge=2, description="Alphabet size")
    words: List[str] = Field(..., min_length=1, description="Codewords as digit strings")
    trace: bool = Field(default=False, description="Include the dangling-set trace")
    witness: bool = Field(default=False, description="Search for an ambiguous word when not a code")
    max_len: Optional[PositiveInt] = Field(None, description="Witness length bound (default: oracle bound)")

    @field_validator("words")
    @classmethod
    def validate_words(cls, v):
        stripped = [w.strip() for w in v]
        if any(not w for w in stripped):
            raise ValueError("Codewords cannot be empty")
        return stripped


class CountRequest(BaseModel):
    """Request model for the count endpoint"""
    kind: CountKind
    n: int = Field(..., ge=2)
    lengths: List[PositiveInt] = Field(..., min_length=1)
    method: CountMethod = Field(default=CountMethod.FORMULA)


class RhoRequest(BaseModel):
    n: int = Field(..., ge=2)
    lengths: List[PositiveInt] = Field(..., min_length=1)
    method: Optional[RhoMethod] = Field(None, description="Force one evaluation path")
    cross_check: bool = Field(default=False, description="Compare both paths where a closed form exists")


class VerifyRequest(BaseModel):
    claim: str = Field(..., description="Claim name, e.g. theorem4")
    n_max: int = Field(default=3, ge=2)
    len_max: int = Field(default=4, ge=1)
    c_max: int = Field(default=12, ge=1)


class TableRequest(BaseModel):
    family: Family
    n: int = Field(..., ge=2)
    c_max: int = Field(..., ge=1)
    digits: Optional[PositiveInt] = None


class ErrorResponse(BaseModel):
    """Response model for error cases"""
    error: str = Field(..., description="Error message")
    status: str = Field(default="error", description="Status of the request")
    code: int = Field(..., description="HTTP status code")
