from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

SCHEMA_VERSION = "1.0"

SUITES = ("cascade", "w0", "isotropy", "codim", "shift", "fixed", "transitivity")

DimValue = Union[bool, int, float, str, List[int]]


class VerifierSettings(BaseModel):
    """Defaults for sampling, oracles and self-tests, read from config.toml"""
    default_samples: int = Field(100, ge=1)
    default_seed: int = Field(42, ge=0)
    oracle_rank_limit: int = Field(4, ge=1)
    coefficient_range: int = Field(99, ge=1)
    genericity_threshold: float = Field(0.95, gt=0, le=1)
    workers: int = Field(4, ge=1)
    random_points: int = Field(20, ge=0)  # random r_-^x points per isotropy suite
    shift_samples: int = Field(50, ge=1)
    large_rank: int = Field(7, ge=1)  # codim sampling is capped from this rank on
    large_rank_samples: int = Field(20, ge=1)
    self_test_exhaustive_max_rank: int = Field(3, ge=0)
    self_test_sampled_triples: int = Field(200, ge=0)


class RunConfig(BaseModel):
    command: Literal["cascade", "verify", "classify", "algebra-info"]
    family: Optional[str] = None
    rank: Optional[int] = None
    all_types: bool = False
    max_rank: Optional[int] = None
    suites: List[str] = Field(default_factory=lambda: list(SUITES))
    samples: int = Field(100, ge=1)
    seed: int = Field(42, ge=0)
    format: Literal["text", "json"] = "text"
    oracle_rank_limit: int = Field(4, ge=1)
    timings: bool = False

    @field_validator("suites")
    @classmethod
    def expand_suites(cls, value: List[str]) -> List[str]:
        unknown = [s for s in value if s != "all" and s not in SUITES]
        if unknown:
            raise ValueError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES + ('all',))}")
        if "all" in value:
            return list(SUITES)
        return [s for s in SUITES if s in value]

    def echo(self) -> Dict[str, Any]:
        """Input echo for JSON reports"""
        return self.model_dump(exclude={"timings"}, exclude_none=True)


class TheoremReport(BaseModel):
    """Outcome of one verifier; ``pass`` is the conjunction of ``checks``"""
    model_config = ConfigDict(populate_by_name=True, arbitrary_types_allowed=True)

    id: str
    family: str
    rank: int
    passed: bool = Field(alias="pass")
    skipped: bool = False
    dims: Dict[str, DimValue] = Field(default_factory=dict)
    checks: Dict[str, bool] = Field(default_factory=dict)
    note: Optional[str] = None
    seconds: Optional[float] = None
    witnesses: Dict[str, Any] = Field(default_factory=dict, exclude=True)

    @model_validator(mode="after")
    def pass_follows_checks(self):
        if not self.skipped and self.passed != all(self.checks.values()):
            raise ValueError(f"{self.id}: pass flag disagrees with its checks")
        return self

    @classmethod
    def from_checks(cls, id: str, family: str, rank: int, checks: Dict[str, bool], **kwargs) -> "TheoremReport":
        return cls(id=id, family=family, rank=rank, passed=all(checks.values()), checks=checks, **kwargs)

    @classmethod
    def skip(cls, id: str, family: str, rank: int, note: str) -> "TheoremReport":
        return cls(id=id, family=family, rank=rank, passed=True, skipped=True, note=note)


class CascadeEntry(BaseModel):
    coords: List[int]
    parent: Optional[int]
    depth: int


class TargetReport(BaseModel):
    family: str
    rank: int
    ell: int
    m: int
    minus_one_in_weyl: bool
    open_coadjoint_orbit: bool
    cascade: List[CascadeEntry]
    suites: List[TheoremReport] = Field(default_factory=list)
    algebra: Optional[Dict[str, DimValue]] = None

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)


class ClassificationRow(BaseModel):
    family: str
    rank: int
    ell: int
    m: int
    minus_one_in_weyl: bool
    open_coadjoint_orbit: bool
    dim_b: int
    n_orbit_codim: int
    b_orbit_codim: int
    consistent: bool


class JsonReport(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    input: Dict[str, Any]
    results: List[TargetReport] = Field(default_factory=list)
    classification: List[ClassificationRow] = Field(default_factory=list)
    passed: bool = Field(True, alias="pass")

    model_config = ConfigDict(populate_by_name=True)
