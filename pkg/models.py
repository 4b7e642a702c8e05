"""
Pydantic models for input documents, module invariants and verification reports
"""

from pydantic import BaseModel, Field, model_validator, field_validator, ConfigDict
from typing import Optional, List, Dict, Any
from enum import Enum
import re

from sympy import isprime

from config import FIELD_CHARACTERISTIC, MIN_CHARACTERISTIC

# ============ ENUMS ============

class VariableBlockEnum(str, Enum):
    """Variable blocks of a polynomial ring"""
    Y = "Y"  # ring variables, bidegree (1, 0)
    T = "T"  # Rees variables, bidegree (0, 1)
    Z = "Z"  # generic coefficients, bidegree (0, 0)
    AUX = "AUX"  # internal auxiliary variables (intersections)

class MonomialOrderEnum(str, Enum):
    """Monomial orders understood by the Groebner engine"""
    GREVLEX = "grevlex"
    LEX = "lex"
    BIGRADED = "bigraded-grevlex"
    ELIM = "elim"

class BourbakiModeEnum(str, Enum):
    """How the generic coefficients of a Bourbaki ideal are represented"""
    RANDOMIZED = "randomized"
    SYMBOLIC = "symbolic"

class CMClassEnum(str, Enum):
    """Cohen-Macaulay classification of a graded quotient"""
    CM = "CM"
    ALMOST_CM = "almostCM"
    OTHER = "other"

class AssertionStatusEnum(str, Enum):
    """Outcome of one report assertion"""
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"  # hypotheses not met

# ============ FIELD MODELS ============

class FieldSpec(BaseModel):
    """Prime coefficient field GF(p)"""
    model_config = ConfigDict(frozen=True)

    characteristic: int = Field(FIELD_CHARACTERISTIC, description="Prime characteristic p")

    @field_validator("characteristic")
    @classmethod
    def check_prime(cls, value: int) -> int:
        if not isprime(value):
            raise ValueError(f"characteristic {value} is not prime")
        if value <= MIN_CHARACTERISTIC:
            raise ValueError(f"characteristic {value} must exceed {MIN_CHARACTERISTIC}")
        return value

# ============ INPUT MODELS ============

_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9]*(_[A-Za-z0-9]+)*$")


class FieldDocument(BaseModel):
    char: int = Field(FIELD_CHARACTERISTIC, description="Field characteristic")


class InputDocument(BaseModel):
    """Presentation matrix as written in a fixture or user file"""
    model_config = ConfigDict(extra="forbid")

    field: FieldDocument = Field(default_factory=FieldDocument, description="Coefficient field")
    variables: List[str] = Field(..., min_length=1, description="Names of the ring variables (Y-block)")
    matrix: List[List[str]] = Field(..., min_length=1, description="Rows of polynomial strings")
    seed: Optional[int] = Field(None, description="Seed for randomized constructions")
    rank: Optional[int] = Field(None, ge=0, description="Declared module rank, checked against the computed one")
    reduction: Optional[List[str]] = Field(None, description="T-linear forms spanning a reduction, e.g. 'T_1 + 2*T_3'")
    description: Optional[str] = Field(None, description="Free text")

    @field_validator("variables")
    @classmethod
    def check_variables(cls, names: List[str]) -> List[str]:
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
            if name.startswith(("T_", "Z_", "AUX")):
                raise ValueError(f"variable name {name!r} collides with reserved T_/Z_/AUX names")
        return names

    @model_validator(mode='after')
    def check_shape(self):
        widths = {len(row) for row in self.matrix}
        if len(widths) != 1:
            raise ValueError("matrix rows must have equal length")
        FieldSpec(characteristic=self.field.char)
        return self

# ============ MODULE MODELS ============

class ModuleInfo(BaseModel):
    """Rank data of a module presented by a matrix"""
    model_config = ConfigDict(frozen=True)

    rank_e: int = Field(..., ge=0, description="Rank of the module")
    mu: int = Field(..., ge=1, description="Number of generators n")
    is_pd1: bool = Field(..., description="s = n - e and the presentation is injective")
    almost_linear_m: Optional[int] = Field(None, ge=1, description="Degree of the last column when all others are linear")


class GsEntry(BaseModel):
    j: int
    fitting_index: int = Field(..., description="Index i of Fitt_i(E)")
    height: Optional[int] = Field(None, description="Height of the Fitting ideal; None for the unit ideal")
    required: int = Field(..., description="Height must exceed this value")
    ok: bool


class GsReport(BaseModel):
    """Witness data for the G_s condition"""
    s_bound: int
    rank_e: int
    entries: List[GsEntry] = Field(default_factory=list)
    holds: bool

# ============ VERIFICATION MODELS ============

class DepthReport(BaseModel):
    """Certified depth lower bound of a graded quotient"""
    dim: int = Field(..., description="Krull dimension of the quotient")
    depth_lower_bound: int = Field(..., ge=0, description="Length of the certified regular sequence")
    trials: int = Field(..., description="Random forms tried per step")
    classification: CMClassEnum
    gap: int = Field(..., description="dim - depth_lower_bound")
    sequence: List[str] = Field(default_factory=list, description="The certified linear forms")
    probabilistic: bool = Field(True, description="The bound is exact only with high probability")

    @model_validator(mode='after')
    def check_consistency(self):
        if self.dim >= 0 and self.depth_lower_bound > self.dim:
            raise ValueError("depth lower bound exceeds dimension")
        expected = (CMClassEnum.CM if self.gap == 0
                    else CMClassEnum.ALMOST_CM if self.gap == 1
                    else CMClassEnum.OTHER)
        if self.classification != expected:
            raise ValueError("classification inconsistent with gap")
        return self


class AssertionResult(BaseModel):
    """One named assertion of a theorem report"""
    name: str
    status: AssertionStatusEnum
    witness: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == AssertionStatusEnum.PASS


class TheoremReport(BaseModel):
    """Named assertions with witnesses; the verdict is their conjunction"""
    theorem: str = Field(..., description="What is being verified")
    assertions: List[AssertionResult] = Field(default_factory=list)
    seed: Optional[int] = None
    ideals: Dict[str, List[str]] = Field(default_factory=dict)
    fingerprints: Dict[str, str] = Field(default_factory=dict)
    numerics: Dict[str, Optional[int]] = Field(default_factory=dict)
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(a.passed for a in self.assertions)

    @property
    def skipped(self) -> bool:
        return any(a.status == AssertionStatusEnum.SKIPPED for a in self.assertions)

    def add(self, name: str, ok: Optional[bool], **witness: Any) -> AssertionResult:
        """Record an assertion; ok=None records it as skipped"""
        status = (AssertionStatusEnum.SKIPPED if ok is None
                  else AssertionStatusEnum.PASS if ok else AssertionStatusEnum.FAIL)
        result = AssertionResult(name=name, status=status, witness=witness)
        self.assertions.append(result)
        return result

    def statuses(self) -> Dict[str, str]:
        return {a.name: a.status.value for a in self.assertions}

# ============ OUTPUT MODELS ============

class AssertionRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(..., alias="pass")
    status: AssertionStatusEnum
    witness: Dict[str, Any] = Field(default_factory=dict)


class Numerics(BaseModel):
    dim: Optional[int] = None
    depth_lb: Optional[int] = None
    ell: Optional[int] = None
    r: Optional[int] = None


class CommandReport(BaseModel):
    """Machine-readable output of one command"""
    command: str
    input_fingerprint: str
    assertions: List[AssertionRecord] = Field(default_factory=list)
    ideals: Dict[str, List[str]] = Field(default_factory=dict)
    numerics: Numerics = Field(default_factory=Numerics)
    details: Dict[str, Any] = Field(default_factory=dict)
    verdict: bool = True
