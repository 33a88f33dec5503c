"""
Koszul cohomology of truncated graded modules

The strand  wedge^{p+1}V (x) M_{q-1} -> wedge^p V (x) M_q -> wedge^{p-1}V (x) M_{q+1}
is assembled block by block from the module's multiplication matrices, and
b_{p,q} = dim ker d_{p,q} - rank d_{p+1,q-1}.
"""
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from syzygy.core.config import settings
from syzygy.core.errors import ImplementationError, MalformedInputError, TruncationError
from syzygy.models.matrix import FpMatrix
from syzygy.models.module import GradedModule
from syzygy.models.strand import KoszulStrand
from syzygy.schemas.betti import BettiDiagram
from syzygy.services.exactla_service import exact_la

logger = logging.getLogger(__name__)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n"""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


@lru_cache(maxsize=None)
def _wedge_basis(n: int, p: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(combinations(range(n), p))


@lru_cache(maxsize=None)
def _wedge_index(n: int, p: int) -> Dict[Tuple[int, ...], int]:
    return {subset: k for k, subset in enumerate(_wedge_basis(n, p))}


@dataclass(frozen=True)
class StrandReport:
    """What happened while computing one b_{p,q}"""

    p: int
    q: int
    rows: int
    cols: int
    rank_out: int
    rank_in: int
    betti: int
    seconds: float
    complex_ok: Optional[bool] = None


class KoszulService:
    """Koszul differentials, Betti diagrams and the Hilbert function identities"""

    # ------------------------------------------------------------ strands

    def koszul_differential(self, module: GradedModule, p: int, q: int) -> FpMatrix:
        """
        Matrix of d_{p,q}: wedge^p V (x) M_q -> wedge^{p-1} V (x) M_{q+1}.

        Domain basis e_I (x) u with I ascending and lexicographically ordered,
        u running fastest. d(e_I (x) u) = sum_l (-1)^l e_{I - i_l} (x) x_{i_l} u.
        """
        n = module.ring.num_vars
        if p < 0:
            raise MalformedInputError(f"Negative homological degree p={p}")
        dim_q = module.dim(q)
        if p == 0:
            return FpMatrix.zeros(0, dim_q, module.p)
        dim_next = module.dim(q + 1)
        rows = binomial(n, p - 1) * dim_next
        cols = binomial(n, p) * dim_q
        if rows == 0 or cols == 0:
            return FpMatrix.zeros(rows, cols, module.p)

        blocks = []
        for i in range(n):
            coo = module.multiplication(i, q).data.tocoo()
            blocks.append((coo.row.astype(np.int64), coo.col.astype(np.int64), coo.data.astype(np.int64)))

        target = _wedge_index(n, p - 1)
        row_parts, col_parts, val_parts = [], [], []
        for col_block, subset in enumerate(_wedge_basis(n, p)):
            for position, variable in enumerate(subset):
                block_rows, block_cols, block_vals = blocks[variable]
                if block_vals.size == 0:
                    continue
                row_block = target[subset[:position] + subset[position + 1:]]
                row_parts.append(block_rows + row_block * dim_next)
                col_parts.append(block_cols + col_block * dim_q)
                val_parts.append(block_vals if position % 2 == 0 else -block_vals)
        if not val_parts:
            return FpMatrix.zeros(rows, cols, module.p)
        return FpMatrix.from_coo(
            rows, cols, np.concatenate(row_parts), np.concatenate(col_parts), np.concatenate(val_parts), module.p
        )

    def strand(self, module: GradedModule, p: int, q: int) -> KoszulStrand:
        return KoszulStrand(
            p=p,
            q=q,
            d_out=self.koszul_differential(module, p, q),
            d_in=self.koszul_differential(module, p + 1, q - 1),
        )

    def koszul_dim(self, module: GradedModule, p: int, q: int) -> int:
        """dim K_{p,q}(M, V)"""
        strand = self.strand(module, p, q)
        value = strand.middle_dim - exact_la.rank(strand.d_out) - exact_la.rank(strand.d_in)
        if value < 0:
            raise ImplementationError(f"Negative Koszul cohomology dimension {value} at (p,q)=({p},{q})")
        return value

    # ----------------------------------------------------------- diagrams

    def betti_diagram(self, module: GradedModule, p_max: int, q_max: int) -> BettiDiagram:
        diagram, _ = self.compute_diagram(module, p_max, q_max, threads=1)
        return diagram

    def compute_diagram(
        self,
        module: GradedModule,
        p_max: int,
        q_max: int,
        threads: Optional[int] = None,
        verify_complex: bool = False,
    ) -> Tuple[BettiDiagram, List[StrandReport]]:
        """
        Every b_{p,q} with p <= p_max and q <= q_max.

        Ranks of the distinct differentials are computed concurrently and each
        one only once; a differential is built, ranked and dropped inside its
        worker.
        """
        if p_max < 0 or q_max < 0:
            raise MalformedInputError(f"Invalid window p_max={p_max}, q_max={q_max}")
        if q_max + 1 > module.max_degree:
            raise TruncationError(
                f"Rows up to q={q_max} need the module through degree {q_max + 1}, window ends at {module.max_degree}"
            )
        n = module.ring.num_vars
        workers = settings.resolve_threads(threads)

        needed = set()
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                needed.add((p, q))
                needed.add((p + 1, q - 1))

        def shape(pq: Tuple[int, int]) -> Tuple[int, int]:
            p, q = pq
            if p == 0 or p > n:
                return 0, 0
            return binomial(n, p - 1) * module.dim(q + 1), binomial(n, p) * module.dim(q)

        ranks: Dict[Tuple[int, int], int] = {}
        seconds: Dict[Tuple[int, int], float] = {}
        nontrivial = [pq for pq in needed if min(shape(pq)) > 0]
        for pq in needed:
            if pq not in nontrivial:
                ranks[pq] = 0
                seconds[pq] = 0.0

        def rank_task(pq: Tuple[int, int]) -> Tuple[Tuple[int, int], int, float]:
            started = time.perf_counter()
            matrix = self.koszul_differential(module, *pq)
            value = exact_la.rank(matrix)
            elapsed = time.perf_counter() - started
            logger.info(f"rank d_{pq[0]},{pq[1]} ({matrix.rows}x{matrix.cols}, nnz {matrix.nnz}) = {value} in {elapsed:.2f}s")
            return pq, value, elapsed

        # Largest matrices first
        nontrivial.sort(key=lambda pq: (-shape(pq)[0] * shape(pq)[1], pq))
        logger.info(f"Ranking {len(nontrivial)} Koszul differentials of {module.label or 'module'} on {workers} threads")
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for pq, value, elapsed in pool.map(rank_task, nontrivial):
                ranks[pq] = value
                seconds[pq] = elapsed

        complex_ok: Dict[Tuple[int, int], bool] = {}
        if verify_complex:
            window = [(p, q) for p in range(p_max + 1) for q in range(q_max + 1)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                for pq, ok in pool.map(lambda pq: (pq, self.strand(module, *pq).is_complex()), window):
                    complex_ok[pq] = ok
            broken = sorted(pq for pq, ok in complex_ok.items() if not ok)
            if broken:
                logger.error(f"d o d != 0 on strands {broken}")
                raise ImplementationError(f"Koszul differentials do not compose to zero at {broken}")

        entries: Dict[Tuple[int, int], int] = {}
        reports: List[StrandReport] = []
        for p in range(p_max + 1):
            for q in range(q_max + 1):
                rows, cols = shape((p, q))
                middle = binomial(n, p) * module.dim(q)
                value = middle - ranks[(p, q)] - ranks[(p + 1, q - 1)]
                if value < 0:
                    raise ImplementationError(f"Negative Koszul cohomology dimension {value} at (p,q)=({p},{q})")
                entries[(p, q)] = value
                reports.append(
                    StrandReport(
                        p=p,
                        q=q,
                        rows=rows,
                        cols=middle,
                        rank_out=ranks[(p, q)],
                        rank_in=ranks[(p + 1, q - 1)],
                        betti=value,
                        seconds=seconds[(p, q)],
                        complex_ok=complex_ok.get((p, q)),
                    )
                )
        diagram = BettiDiagram.from_entries(n, p_max, q_max, entries)
        return diagram, reports

    # ------------------------------------------------- Hilbert identities

    def hilbert_from_diagram(self, diagram: BettiDiagram, d: int) -> int:
        """sum (-1)^p b_{p,q} C(d + r - p - q, r) over the window"""
        r = diagram.r
        return sum(
            (-1) ** p * b * binomial(d + r - p - q, r)
            for p, q, b in diagram.entries()
            if b
        )

    def diagonal_sums(self, h: Sequence[int], r: int, k_max: Optional[int] = None) -> List[int]:
        """B_k = h(k) - sum_{l<k} B_l C(r+k-l, r)"""
        if k_max is None:
            k_max = len(h) - 1
        if k_max >= len(h):
            raise MalformedInputError(f"Hilbert values given through degree {len(h) - 1}, need {k_max}")
        sums: List[int] = []
        for k in range(k_max + 1):
            sums.append(h[k] - sum(sums[l] * binomial(r + k - l, r) for l in range(k)))
        return sums

    def diagram_diagonals(self, diagram: BettiDiagram, k_max: int) -> List[int]:
        """sum_p (-1)^p b_{p,k-p} for k = 0..k_max"""
        result = []
        for k in range(k_max + 1):
            total = 0
            for p in range(k + 1):
                value = diagram.get(p, k - p)
                if value is None:
                    raise TruncationError(f"b_{p},{k - p} is outside the computed window")
                total += (-1) ** p * value
            result.append(total)
        return result

    def hilbert_consistency(self, diagram: BettiDiagram, module: GradedModule) -> List[int]:
        """Degrees d where the Hilbert function read off the diagram differs from dim M_d"""
        top = min(diagram.q_max, diagram.p_max, module.max_degree)
        mismatches = [d for d in range(top + 1) if self.hilbert_from_diagram(diagram, d) != module.dim(d)]
        if mismatches:
            logger.warning(f"Hilbert function mismatch in degrees {mismatches}")
        return mismatches


koszul_service = KoszulService()
