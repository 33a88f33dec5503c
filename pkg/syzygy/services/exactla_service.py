"""
Exact linear algebra over F_p

Rank runs a Markowitz-style sparse elimination first and hands the active
block over to dense numpy elimination once it fills in. Kernels and solves
go through the canonical reduced row echelon form, so their output does not
depend on how the input was assembled.
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Set, Tuple

import numpy as np

from syzygy.core.config import defaults
from syzygy.core.errors import MalformedInputError
from syzygy.models.matrix import FpMatrix

logger = logging.getLogger(__name__)

SparseRows = Dict[int, Dict[int, int]]


def _dense_rank(a: np.ndarray, p: int) -> int:
    """Forward elimination only; pivot = lowest row index in each column"""
    a = np.array(a, dtype=np.int64) % p
    m, n = a.shape
    if m > n:
        a = np.ascontiguousarray(a.T)
        m, n = n, m
    rank = 0
    for c in range(n):
        if rank == m:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank, c:] = a[rank, c:] * inv % p
        below = np.flatnonzero(a[rank + 1:, c])
        if below.size:
            rows = rank + 1 + below
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[rank, c:])) % p
        rank += 1
    return rank


def _rref(a: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    a = np.array(a, dtype=np.int64) % p
    if a.ndim != 2:
        raise MalformedInputError(f"Expected a 2-d array, got shape {a.shape}")
    m, n = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        pivot = r + int(nz[0])
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        column = a[:, c].copy()
        column[r] = 0
        others = np.flatnonzero(column)
        if others.size:
            a[others] = (a[others] - np.outer(column[others], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


class ExactLinearAlgebraService:
    """Rank, kernels, solving and determinants over F_p"""

    def __init__(self, dense_fill_threshold: Optional[float] = None, markowitz_cost_limit: Optional[int] = None):
        self.dense_fill_threshold = dense_fill_threshold if dense_fill_threshold is not None else defaults.dense_fill_threshold
        self.markowitz_cost_limit = markowitz_cost_limit if markowitz_cost_limit is not None else defaults.markowitz_cost_limit

    # ------------------------------------------------------------------ rank

    def rank(self, m: FpMatrix) -> int:
        """Rank of m over F_p"""
        if m.nnz == 0:
            return 0
        sparse_rank, rows, col_rows = self._sparse_phase(m)
        if not rows:
            return sparse_rank
        active_rows = sorted(rows)
        active_cols = sorted(col_rows)
        col_pos = {c: k for k, c in enumerate(active_cols)}
        block = np.zeros((len(active_rows), len(active_cols)), dtype=np.int64)
        for k, i in enumerate(active_rows):
            for j, v in rows[i].items():
                block[k, col_pos[j]] = v
        logger.debug(
            f"Dense phase on {block.shape[0]}x{block.shape[1]} block after {sparse_rank} sparse pivots"
        )
        return sparse_rank + _dense_rank(block, m.p)

    def _sparse_phase(self, m: FpMatrix) -> Tuple[int, SparseRows, Dict[int, Set[int]]]:
        p = m.p
        csr = m.data
        rows: SparseRows = {}
        for i in range(m.rows):
            start, end = csr.indptr[i], csr.indptr[i + 1]
            if start < end:
                rows[i] = dict(zip(csr.indices[start:end].tolist(), csr.data[start:end].tolist()))
        col_rows: Dict[int, Set[int]] = defaultdict(set)
        for i, row in rows.items():
            for j in row:
                col_rows[j].add(i)
        nnz = m.nnz
        rank = 0

        while rows:
            density = nnz / (len(rows) * len(col_rows))
            if density > self.dense_fill_threshold:
                break
            cost, i, j = self._markowitz_pivot(rows, col_rows)
            if cost > self.markowitz_cost_limit:
                break

            pivot_row = rows.pop(i)
            for jj in pivot_row:
                col_rows[jj].discard(i)
            nnz -= len(pivot_row)
            inv = pow(pivot_row[j], -1, p)
            for k in sorted(col_rows[j]):
                row = rows[k]
                factor = row[j] * inv % p
                for jj, v in pivot_row.items():
                    new = (row.get(jj, 0) - factor * v) % p
                    if new:
                        if jj not in row:
                            col_rows[jj].add(k)
                            nnz += 1
                        row[jj] = new
                    elif jj in row:
                        del row[jj]
                        col_rows[jj].discard(k)
                        nnz -= 1
                if not row:
                    del rows[k]
            for jj in pivot_row:
                if not col_rows[jj]:
                    del col_rows[jj]
            rank += 1
        return rank, rows, col_rows

    @staticmethod
    def _markowitz_pivot(rows: SparseRows, col_rows: Dict[int, Set[int]]) -> Tuple[int, int, int]:
        """Minimal (r_i - 1)(c_j - 1); ties go to the lowest row, then the lowest column"""
        best: Optional[Tuple[int, int, int]] = None
        for j, members in col_rows.items():
            col_cost = len(members) - 1
            for i in members:
                key = (col_cost * (len(rows[i]) - 1), i, j)
                if best is None or key < best:
                    best = key
        return best

    # ------------------------------------------------------------ echelon forms

    def rref(self, m, p: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
        """Reduced row echelon form and pivot columns of an FpMatrix or a dense array"""
        if isinstance(m, FpMatrix):
            return _rref(m.to_dense(), m.p)
        if p is None:
            raise MalformedInputError("A prime is required for dense input")
        return _rref(np.asarray(m), p)

    def kernel_basis(self, m: FpMatrix) -> List[np.ndarray]:
        """Right null space basis, one vector per non-pivot column, in column order"""
        reduced, pivots = self.rref(m)
        pivot_set = set(pivots)
        basis = []
        for free in range(m.cols):
            if free in pivot_set:
                continue
            vector = np.zeros(m.cols, dtype=np.int64)
            vector[free] = 1
            for i, c in enumerate(pivots):
                vector[c] = (-reduced[i, free]) % m.p
            basis.append(vector)
        return basis

    def solve_membership(self, m: FpMatrix, v) -> Optional[np.ndarray]:
        """Some x with m x = v, or None when v is not in the column span"""
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (m.rows,):
            raise MalformedInputError(f"Right-hand side has shape {v.shape}, matrix has {m.rows} rows")
        augmented = np.hstack([m.to_dense(), (v % m.p).reshape(-1, 1)])
        reduced, pivots = _rref(augmented, m.p)
        if pivots and pivots[-1] == m.cols:
            return None
        x = np.zeros(m.cols, dtype=np.int64)
        for i, c in enumerate(pivots):
            x[c] = reduced[i, m.cols]
        return x

    def determinant(self, a, p: int) -> int:
        a = np.array(a, dtype=np.int64) % p
        n, n2 = a.shape
        if n != n2:
            raise MalformedInputError(f"Determinant of a non-square {a.shape} matrix")
        det = 1
        for c in range(n):
            nz = np.flatnonzero(a[c:, c])
            if nz.size == 0:
                return 0
            pivot = c + int(nz[0])
            if pivot != c:
                a[[c, pivot]] = a[[pivot, c]]
                det = -det
            det = det * int(a[c, c]) % p
            inv = pow(int(a[c, c]), -1, p)
            below = c + 1 + np.flatnonzero(a[c + 1:, c])
            if below.size:
                factors = a[below, c] * inv % p
                a[below, c:] = (a[below, c:] - np.outer(factors, a[c, c:])) % p
        return det % p

    def rank_dense(self, a, p: int) -> int:
        return _dense_rank(np.asarray(a), p)

    # --------------------------------------------------------------- products

    def multiply(self, a: FpMatrix, b: FpMatrix) -> FpMatrix:
        return a.matmul(b)

    def is_zero(self, m: FpMatrix) -> bool:
        return m.is_zero()


exact_la = ExactLinearAlgebraService()
