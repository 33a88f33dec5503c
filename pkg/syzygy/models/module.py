from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from syzygy.core.errors import TruncationError
from syzygy.models.matrix import FpMatrix
from syzygy.schemas.ring import RingSpec


@dataclass(frozen=True, eq=False)
class GradedModule:
    """
    Truncated graded S-module M = M_min + ... + M_max.

    Pieces are coordinate spaces F_p^{dim M_q}; mult[(i, q)] is the matrix of
    multiplication by x_i from M_q to M_{q+1}. Pieces below min_degree are zero,
    pieces above max_degree are unknown.
    """

    ring: RingSpec
    min_degree: int
    max_degree: int
    piece_dims: Dict[int, int]
    mult: Dict[Tuple[int, int], FpMatrix]
    label: str = ""

    @property
    def p(self) -> int:
        return self.ring.p

    def dim(self, q: int) -> int:
        if q < self.min_degree:
            return 0
        if q > self.max_degree:
            raise TruncationError(f"Piece M_{q} is outside the window [{self.min_degree}, {self.max_degree}] of {self.label or 'module'}")
        return self.piece_dims.get(q, 0)

    def multiplication(self, i: int, q: int) -> FpMatrix:
        """x_i : M_q -> M_{q+1}"""
        if q + 1 > self.max_degree:
            raise TruncationError(f"x_{i}: M_{q} -> M_{q + 1} needs degree {q + 1} > max_degree {self.max_degree}")
        if q < self.min_degree:
            return FpMatrix.zeros(self.dim(q + 1), 0, self.p)
        return self.mult[(i, q)]

    def hilbert_values(self) -> List[int]:
        """dim M_d for d = 0 .. max_degree"""
        return [self.dim(d) for d in range(0, self.max_degree + 1)]


@dataclass(frozen=True)
class AuditEntry:
    degree: int
    dimension: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.dimension == self.expected


@dataclass(frozen=True)
class NormalityAudit:
    """Per-degree comparison of the coordinate ring with Riemann-Roch"""

    entries: Tuple[AuditEntry, ...]

    @property
    def passed(self) -> bool:
        return all(entry.ok for entry in self.entries)

    def first_failure(self):
        for entry in self.entries:
            if not entry.ok:
                return entry
        return None

    def as_dict(self) -> Dict[str, Dict[str, object]]:
        return {
            str(entry.degree): {"dim": entry.dimension, "expected": entry.expected, "ok": entry.ok}
            for entry in self.entries
        }


@dataclass(frozen=True, eq=False)
class CoordinateRing:
    """
    Homogeneous coordinate ring of an embedded curve, realised inside the space
    of functions on N sample points. bases[q] is the reduced echelon basis of the
    degree-q piece; the coordinates of a vector in that piece are its values at
    pivots[q].
    """

    module: GradedModule
    bases: Dict[int, np.ndarray]
    pivots: Dict[int, List[int]]
    audit: NormalityAudit
    sections: np.ndarray = field(repr=False)

    def coordinates(self, q: int, values) -> np.ndarray:
        """Coordinates in the canonical basis of piece q of a vector of sample values"""
        p = self.module.p
        values = np.asarray(values, dtype=np.int64) % p
        coords = values[self.pivots[q]]
        if not np.array_equal(coords @ self.bases[q] % p if self.bases[q].shape[0] else np.zeros_like(values), values):
            raise ValueError(f"Vector is not in degree-{q} piece of the coordinate ring")
        return coords
