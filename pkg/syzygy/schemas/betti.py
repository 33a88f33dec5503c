from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class BettiDiagram(BaseModel):
    """
    Graded Betti numbers b_{p,q} for 0 <= p <= p_max, 0 <= q <= q_max.

    Column p, row q; the entry counts generators of the p-th free module in
    degree p + q. Entries outside the window are uncomputed, not zero.
    """

    model_config = ConfigDict(frozen=True)

    num_vars: int = Field(..., ge=1, description="Number of ring variables r+1")
    p_max: int = Field(..., ge=0)
    q_max: int = Field(..., ge=0)
    table: List[List[int]] = Field(..., description="table[q][p] = b_{p,q}")

    @model_validator(mode="after")
    def validate_table(self):
        """Window shape, nonnegativity and resolution length <= r+1"""
        if len(self.table) != self.q_max + 1 or any(len(row) != self.p_max + 1 for row in self.table):
            raise ValueError(f"Table shape does not match window p_max={self.p_max}, q_max={self.q_max}")
        for q, row in enumerate(self.table):
            for p, value in enumerate(row):
                if value < 0:
                    raise ValueError(f"Negative Betti number b_{p},{q} = {value}")
                if p > self.num_vars and value != 0:
                    raise ValueError(f"b_{p},{q} = {value} beyond resolution length {self.num_vars}")
        return self

    @classmethod
    def from_entries(cls, num_vars: int, p_max: int, q_max: int, entries: Dict[Tuple[int, int], int]) -> "BettiDiagram":
        table = [[entries.get((p, q), 0) for p in range(p_max + 1)] for q in range(q_max + 1)]
        return cls(num_vars=num_vars, p_max=p_max, q_max=q_max, table=table)

    @property
    def r(self) -> int:
        return self.num_vars - 1

    def in_window(self, p: int, q: int) -> bool:
        return 0 <= p <= self.p_max and 0 <= q <= self.q_max

    def get(self, p: int, q: int) -> Optional[int]:
        """b_{p,q}, 0 for negative indices, None when uncomputed"""
        if p < 0 or q < 0:
            return 0
        if not self.in_window(p, q):
            return None
        return self.table[q][p]

    def entries(self) -> Iterator[Tuple[int, int, int]]:
        """(p, q, b) sorted by (p, q)"""
        for p in range(self.p_max + 1):
            for q in range(self.q_max + 1):
                yield p, q, self.table[q][p]

    def column_totals(self) -> List[int]:
        return [sum(self.table[q][p] for q in range(self.q_max + 1)) for p in range(self.p_max + 1)]

    def render(self) -> str:
        """Text table in the usual rows-q / columns-p layout with dots for zeros"""
        header = [""] + [str(p) for p in range(self.p_max + 1)]
        rows = [["total:"] + [str(t) for t in self.column_totals()]]
        for q in range(self.q_max + 1):
            rows.append([f"{q}:"] + [str(v) if v else "." for v in self.table[q]])
        widths = [max(len(row[k]) for row in [header] + rows) for k in range(len(header))]
        lines = []
        for row in [header] + rows:
            cells = [row[0].rjust(widths[0])] + [cell.rjust(widths[k]) for k, cell in enumerate(row) if k > 0]
            lines.append(" ".join(cells).rstrip())
        return "\n".join(lines)


class TableFamily(str, Enum):
    CANONICAL_ODD = "canonical-odd"
    CANONICAL_EVEN = "canonical-even"
    PARACANONICAL_ODD = "paracanonical-odd"
    PARACANONICAL_EVEN = "paracanonical-even"

    @property
    def is_canonical(self) -> bool:
        return self in (TableFamily.CANONICAL_ODD, TableFamily.CANONICAL_EVEN)

    @property
    def parity(self) -> int:
        return 1 if self in (TableFamily.CANONICAL_ODD, TableFamily.PARACANONICAL_ODD) else 0


class FormulaTerm(BaseModel):
    """One predicted entry and the rule that produced it"""

    p: int
    q: int
    value: int
    rule: str


class ExpectedTable(BaseModel):
    """Predicted Betti table of a general curve in one of the four formula families"""

    family: TableFamily
    genus: int = Field(..., ge=3)
    degree: int = Field(..., description="Degree of the embedding line bundle")
    diagram: BettiDiagram
    terms: List[FormulaTerm] = Field(default_factory=list)

    @property
    def h0(self) -> int:
        return self.diagram.num_vars
