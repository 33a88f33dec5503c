from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix

# Splitting one factor into 16-bit halves keeps every int64 accumulation exact
_SPLIT_BITS = 16


def _reduced_csr(matrix: csr_matrix, p: int) -> csr_matrix:
    matrix = matrix.tocsr().astype(np.int64)
    matrix.sum_duplicates()
    matrix.data %= p
    matrix.eliminate_zeros()
    matrix.sort_indices()
    return matrix


@dataclass(frozen=True, eq=False)
class FpMatrix:
    """Sparse matrix over F_p. Values are reduced, nonzero and unique per (row, col)."""

    rows: int
    cols: int
    p: int
    data: csr_matrix

    @classmethod
    def from_coo(cls, rows: int, cols: int, row_idx, col_idx, values, p: int) -> "FpMatrix":
        """Duplicate (row, col) pairs are summed mod p"""
        row_idx = np.asarray(row_idx, dtype=np.int64)
        col_idx = np.asarray(col_idx, dtype=np.int64)
        values = np.asarray(values, dtype=np.int64) % p
        coo = coo_matrix((values, (row_idx, col_idx)), shape=(rows, cols), dtype=np.int64)
        return cls(rows=rows, cols=cols, p=p, data=_reduced_csr(coo.tocsr(), p))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[Tuple[int, int, int]], p: int) -> "FpMatrix":
        entries = [(r, c, v % p) for r, c, v in entries]
        if not entries:
            return cls.zeros(rows, cols, p)
        row_idx, col_idx, values = zip(*entries)
        return cls.from_coo(rows, cols, row_idx, col_idx, values, p)

    @classmethod
    def from_dense(cls, array, p: int) -> "FpMatrix":
        array = np.asarray(array, dtype=np.int64) % p
        if array.ndim != 2:
            raise ValueError(f"Expected a 2-d array, got shape {array.shape}")
        rows, cols = array.shape
        return cls(rows=rows, cols=cols, p=p, data=_reduced_csr(csr_matrix(array), p))

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(rows=rows, cols=cols, p=p, data=csr_matrix((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        idx = np.arange(n)
        return cls.from_coo(n, n, idx, idx, np.ones(n, dtype=np.int64), p)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return int(self.data.nnz)

    def entries(self) -> List[Tuple[int, int, int]]:
        """Entries sorted by (row, col)"""
        coo = self.data.tocoo()
        triples = zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist())
        return sorted(triples)

    def to_dense(self) -> np.ndarray:
        return self.data.toarray().astype(np.int64)

    def transpose(self) -> "FpMatrix":
        return FpMatrix(rows=self.cols, cols=self.rows, p=self.p, data=_reduced_csr(self.data.T, self.p))

    def permute_rows(self, order: Sequence[int]) -> "FpMatrix":
        """Row k of the result is row order[k] of self"""
        return FpMatrix(rows=self.rows, cols=self.cols, p=self.p, data=_reduced_csr(self.data[list(order), :], self.p))

    def matmul(self, other: "FpMatrix") -> "FpMatrix":
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}")
        if self.p != other.p:
            raise ValueError("Matrices live over different fields")
        mask = (1 << _SPLIT_BITS) - 1
        low = other.data.copy()
        low.data = low.data & mask
        high = other.data.copy()
        high.data = high.data >> _SPLIT_BITS
        product_low = _reduced_csr(self.data @ low, self.p)
        product_high = _reduced_csr(self.data @ high, self.p)
        product_high.data = (product_high.data << _SPLIT_BITS) % self.p
        total = _reduced_csr(product_low + product_high, self.p)
        return FpMatrix(rows=self.rows, cols=other.cols, p=self.p, data=total)

    def apply(self, vector) -> np.ndarray:
        """self * vector over F_p"""
        vector = np.asarray(vector, dtype=np.int64) % self.p
        if vector.shape != (self.cols,):
            raise ValueError(f"Vector of length {vector.shape} does not match {self.cols} columns")
        column = FpMatrix.from_dense(vector.reshape(-1, 1), self.p)
        return self.matmul(column).to_dense().reshape(-1)

    def is_zero(self) -> bool:
        return self.nnz == 0
