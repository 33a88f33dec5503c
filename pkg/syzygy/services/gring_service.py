"""
Graded polynomial rings and modules presented by coordinates

Quotients S/I are built degree by degree from an echelonized I_d, with the
non-pivot monomials as coordinates; no Groebner bases are involved.
"""
import logging
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from syzygy.core.errors import MalformedInputError
from syzygy.models.matrix import FpMatrix
from syzygy.models.module import GradedModule
from syzygy.schemas.field import PrimeFieldConfig
from syzygy.schemas.ring import HomogeneousIdeal, IdealGenerator, RingSpec
from syzygy.services.exactla_service import exact_la

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


def _lex_exponents(num_vars: int, degree: int) -> Iterator[Exponent]:
    if num_vars == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _lex_exponents(num_vars - 1, degree - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _basis(num_vars: int, degree: int) -> Tuple[Exponent, ...]:
    return tuple(_lex_exponents(num_vars, degree))


@lru_cache(maxsize=None)
def _index(num_vars: int, degree: int) -> Dict[Exponent, int]:
    return {mono: k for k, mono in enumerate(_basis(num_vars, degree))}


class GradedRingService:
    """Monomial bases, ideal pieces and quotient modules"""

    def monomial_basis(self, ring: RingSpec, d: int) -> List[Exponent]:
        """Exponent tuples of degree d in descending lexicographic order"""
        if d < 0:
            raise MalformedInputError(f"Negative degree {d}")
        return list(_basis(ring.num_vars, d))

    def monomial_index(self, ring: RingSpec, d: int) -> Dict[Exponent, int]:
        if d < 0:
            raise MalformedInputError(f"Negative degree {d}")
        return _index(ring.num_vars, d)

    def form(self, ring: RingSpec, degree: int, terms: Dict[Exponent, int]) -> IdealGenerator:
        """Generator from a {exponent: coefficient} dictionary"""
        index = self.monomial_index(ring, degree)
        coefficients = [0] * len(index)
        for mono, coeff in terms.items():
            if sum(mono) != degree or len(mono) != ring.num_vars:
                raise MalformedInputError(f"Monomial {mono} is not of degree {degree} in {ring.num_vars} variables")
            coefficients[index[mono]] = coeff % ring.p
        return IdealGenerator(degree=degree, coefficients=coefficients)

    def twisted_cubic_ideal(self, field: PrimeFieldConfig) -> HomogeneousIdeal:
        """x0x2 - x1^2, x1x3 - x2^2, x0x3 - x1x2"""
        ring = RingSpec(num_vars=4, field=field)
        quadrics = [
            {(1, 0, 1, 0): 1, (0, 2, 0, 0): -1},
            {(0, 1, 0, 1): 1, (0, 0, 2, 0): -1},
            {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1},
        ]
        return HomogeneousIdeal(ring=ring, generators=[self.form(ring, 2, q) for q in quadrics])

    def ideal_piece(self, ideal: HomogeneousIdeal, d: int) -> FpMatrix:
        """Rows: monomials of degree d. Columns: m * f over generators f and monomials m."""
        ring = ideal.ring
        target = self.monomial_index(ring, d)
        row_idx: List[int] = []
        col_idx: List[int] = []
        values: List[int] = []
        col = 0
        for gen in ideal.generators:
            if gen.degree > d:
                continue
            support = [(mono, c) for mono, c in zip(_basis(ring.num_vars, gen.degree), gen.coefficients) if c % ring.p]
            for shift in _basis(ring.num_vars, d - gen.degree):
                for mono, c in support:
                    product = tuple(a + b for a, b in zip(mono, shift))
                    row_idx.append(target[product])
                    col_idx.append(col)
                    values.append(c)
                col += 1
        return FpMatrix.from_coo(len(target), col, row_idx, col_idx, values, ring.p)

    def quotient_module(self, ideal: HomogeneousIdeal, max_degree: int, label: str = "") -> GradedModule:
        """(S/I)_0 + ... + (S/I)_max_degree with multiplication reduced mod I"""
        ring = ideal.ring
        p = ring.p
        if max_degree < 0:
            raise MalformedInputError(f"Negative max_degree {max_degree}")

        echelon: Dict[int, Tuple[np.ndarray, List[int]]] = {}
        standard: Dict[int, List[int]] = {}
        for d in range(max_degree + 1):
            spanning = self.ideal_piece(ideal, d).transpose()
            reduced, pivots = exact_la.rref(spanning)
            pivot_set = set(pivots)
            echelon[d] = (reduced, pivots)
            standard[d] = [k for k in range(ring.monomial_count(d)) if k not in pivot_set]

        mult: Dict[Tuple[int, int], FpMatrix] = {}
        for d in range(max_degree):
            reduced, pivots = echelon[d + 1]
            pivot_row = {c: t for t, c in enumerate(pivots)}
            position = {c: k for k, c in enumerate(standard[d + 1])}
            source = _basis(ring.num_vars, d)
            target = _index(ring.num_vars, d + 1)
            for i in range(ring.num_vars):
                entries = []
                for k, mono_idx in enumerate(standard[d]):
                    shifted = list(source[mono_idx])
                    shifted[i] += 1
                    idx = target[tuple(shifted)]
                    if idx in position:
                        entries.append((position[idx], k, 1))
                        continue
                    # x_i m is a leading monomial of I_{d+1}: replace it by minus the tail of its row
                    row = reduced[pivot_row[idx]]
                    for c in standard[d + 1]:
                        if row[c]:
                            entries.append((position[c], k, -int(row[c])))
                mult[(i, d)] = FpMatrix.from_entries(len(standard[d + 1]), len(standard[d]), entries, p)

        dims = {d: len(standard[d]) for d in range(max_degree + 1)}
        logger.debug(f"Quotient module {label or 'S/I'} with dims {dims}")
        return GradedModule(ring=ring, min_degree=0, max_degree=max_degree, piece_dims=dims, mult=mult, label=label)

    def free_module(self, ring: RingSpec, max_degree: int) -> GradedModule:
        return self.quotient_module(HomogeneousIdeal(ring=ring, generators=[]), max_degree, label="S")

    def residue_field_module(self, ring: RingSpec, max_degree: Optional[int] = None) -> GradedModule:
        """The S-module F_p = S/(x_0, ..., x_r), concentrated in degree 0"""
        if max_degree is None:
            max_degree = 2
        dims = {d: (1 if d == 0 else 0) for d in range(max_degree + 1)}
        mult = {
            (i, d): FpMatrix.zeros(dims[d + 1], dims[d], ring.p)
            for i in range(ring.num_vars)
            for d in range(max_degree)
        }
        return GradedModule(ring=ring, min_degree=0, max_degree=max_degree, piece_dims=dims, mult=mult, label="residue field")

    def check_commutation(self, module: GradedModule) -> bool:
        """x_j x_i = x_i x_j on every pair of consecutive pieces inside the window"""
        for q in range(module.min_degree, module.max_degree - 1):
            for i, j in combinations(range(module.ring.num_vars), 2):
                left = exact_la.multiply(module.multiplication(j, q + 1), module.multiplication(i, q))
                right = exact_la.multiply(module.multiplication(i, q + 1), module.multiplication(j, q))
                if left.entries() != right.entries():
                    logger.warning(f"x_{i} and x_{j} do not commute on M_{q} of {module.label}")
                    return False
        return True


graded_ring_service = GradedRingService()
