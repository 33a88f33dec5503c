from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class PredicateStatus(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    UNDECIDABLE = "UNDECIDABLE"
    UNSUPPORTED = "UNSUPPORTED"


class PredicateResult(BaseModel):
    """Outcome of one conjecture predicate on one diagram"""

    name: str
    status: PredicateStatus
    witness: Optional[Tuple[int, int]] = Field(default=None, description="(p, q) of the first violation")
    message: str = ""
    details: Dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == PredicateStatus.PASS


class WitnessSyzygy(BaseModel):
    """An explicit nonzero class in K_{p,1} with its certificate"""

    p: int = Field(..., description="Homological degree r_1 + r_2 - 1")
    r1: int = Field(..., ge=1)
    r2: int = Field(..., ge=1)
    coordinates: List[Tuple[int, int]] = Field(..., description="Nonzero (index, value) pairs in wedge^p V (x) M_1")
    cocycle: bool
    coboundary: bool
    tensor: Optional[List[List[int]]] = Field(default=None, description="V (x) V coefficients when p = 1")

    @property
    def certified(self) -> bool:
        return self.cocycle and not self.coboundary


class StrandTiming(BaseModel):
    p: int
    q: int
    rows: int
    cols: int
    rank: int
    seconds: float
    complex_ok: Optional[bool] = None


class RunReport(BaseModel):
    """Everything needed to reproduce and compare one command run"""

    command: str
    model: Dict[str, Any] = Field(default_factory=dict)
    prime: int
    seed: int
    ring_vars: int
    window: Dict[str, int]
    betti: List[List[int]] = Field(default_factory=list, description="[p, q, b] sorted by (p, q)")
    hilbert: List[int] = Field(default_factory=list)
    audits: Dict[str, Any] = Field(default_factory=dict)
    predicates: Dict[str, Any] = Field(default_factory=dict)
    witness: Optional[Dict[str, Any]] = None
    timings: List[StrandTiming] = Field(default_factory=list)

    def as_json_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        exclude = set() if include_timings else {"timings"}
        data = self.model_dump(mode="json", exclude=exclude)
        if data.get("witness") is None:
            data.pop("witness", None)
        return data

    @property
    def exit_status(self) -> List[PredicateStatus]:
        return [PredicateStatus(entry["status"]) for entry in self.predicates.values()]
