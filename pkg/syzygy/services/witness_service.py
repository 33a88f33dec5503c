"""
Explicit nonzero linear syzygies from a splitting L = L_1 (x) L_2

With sigma_0..sigma_{r1} spanning H^0(L_1) and tau_0..tau_{r2} spanning H^0(L_2),

    gamma = sum_{i=0..r1} sum_{j=1..r2} (-1)^{i+j}
            (tau_0 sigma_0) ^ .. omit(tau_0 sigma_i) .. ^ (tau_0 sigma_{r1})
          ^ (sigma_0 tau_1) ^ .. omit(sigma_0 tau_j) .. ^ (sigma_0 tau_{r2})
          (x) sigma_i tau_j

is a cocycle of wedge^{r1+r2-1} H^0(L) (x) H^0(L) that is not a coboundary.
"""
import logging
from itertools import combinations
from typing import List

import numpy as np

from syzygy.core.errors import DegenerateModelError, ImplementationError, UsageError
from syzygy.models.matrix import FpMatrix
from syzygy.models.module import CoordinateRing
from syzygy.schemas.curve import LineBundleData
from syzygy.schemas.report import WitnessSyzygy
from syzygy.services.exactla_service import exact_la
from syzygy.services.koszul_service import koszul_service

logger = logging.getLogger(__name__)


class WitnessService:
    """Builds and certifies Green-Lazarsfeld witnesses"""

    def _section_coordinates(self, ring: CoordinateRing, values: np.ndarray) -> np.ndarray:
        """Coordinates of a function on the sample points in the basis x_0..x_r of H^0(L)"""
        p = ring.module.p
        system = FpMatrix.from_dense(ring.sections.T, p)
        solution = exact_la.solve_membership(system, values % p)
        if solution is None:
            raise UsageError("A product sigma_i tau_j is not a section of L")
        return solution

    def _wedge(self, vectors: List[np.ndarray], n: int, p: int) -> np.ndarray:
        """Coordinates of v_1 ^ ... ^ v_k on e_I, I ascending in lexicographic order"""
        k = len(vectors)
        matrix = np.array(vectors, dtype=np.int64).reshape(k, n)
        return np.array(
            [exact_la.determinant(matrix[:, list(subset)], p) for subset in combinations(range(n), k)],
            dtype=np.int64,
        )

    def gl_witness(
        self, ring: CoordinateRing, first: LineBundleData, second: LineBundleData
    ) -> WitnessSyzygy:
        """
        gamma in wedge^p V (x) M_1 with p = r1 + r2 - 1, checked against
        d_{p,1} (cocycle) and d_{p+1,0} (coboundary).
        """
        module = ring.module
        p_field = module.p
        n = module.ring.num_vars
        sigma = first.section_values % p_field
        tau = second.section_values % p_field
        r1, r2 = sigma.shape[0] - 1, tau.shape[0] - 1
        if r1 < 1 or r2 < 1:
            raise UsageError(f"Both factors need r >= 1, got r1={r1}, r2={r2}")
        if sigma.shape[1] != ring.sections.shape[1] or tau.shape[1] != ring.sections.shape[1]:
            raise UsageError("Factor bundles are evaluated on a different sample set")
        if module.max_degree < 2:
            raise UsageError("The coordinate ring must reach degree 2 to test the cocycle condition")
        degree = r1 + r2 - 1

        row_first = [self._section_coordinates(ring, tau[0] * sigma[i] % p_field) for i in range(r1 + 1)]
        row_second = [self._section_coordinates(ring, sigma[0] * tau[j] % p_field) for j in range(r2 + 1)]

        dim_one = module.dim(1)
        gamma = np.zeros(len(list(combinations(range(n), degree))) * dim_one, dtype=np.int64)
        tensor = np.zeros((n, n), dtype=np.int64)
        for i in range(r1 + 1):
            for j in range(1, r2 + 1):
                sign = -1 if (i + j) % 2 else 1
                factors = [row_first[k] for k in range(r1 + 1) if k != i]
                factors += [row_second[k] for k in range(1, r2 + 1) if k != j]
                wedge = self._wedge(factors, n, p_field)
                product = sigma[i] * tau[j] % p_field
                coords = ring.coordinates(1, product)
                gamma = (gamma + sign * np.outer(wedge, coords).reshape(-1)) % p_field
                if degree == 1:
                    tensor = (tensor + sign * np.outer(factors[0], self._section_coordinates(ring, product))) % p_field

        d_out = koszul_service.koszul_differential(module, degree, 1)
        d_in = koszul_service.koszul_differential(module, degree + 1, 0)
        cocycle = not np.any(d_out.apply(gamma)) if d_out.rows else True
        if not cocycle:
            logger.error(f"Witness in degree {degree} is not a cocycle")
            raise ImplementationError(f"gamma is not a cocycle of d_{degree},1")
        coboundary = exact_la.solve_membership(d_in, gamma) is not None
        if coboundary or not np.any(gamma):
            raise DegenerateModelError(f"gamma is a coboundary in K_{degree},1; choose other sections")

        logger.info(f"Certified witness syzygy in K_{degree},1 (r1={r1}, r2={r2})")
        nonzero = np.flatnonzero(gamma)
        return WitnessSyzygy(
            p=degree,
            r1=r1,
            r2=r2,
            coordinates=[(int(k), int(gamma[k])) for k in nonzero],
            cocycle=cocycle,
            coboundary=coboundary,
            tensor=tensor.tolist() if degree == 1 else None,
        )

    def quadric_rank(self, witness: WitnessSyzygy, p: int) -> int:
        """Rank of the symmetric matrix of the quadric attached to a K_{1,1} witness"""
        if witness.tensor is None:
            raise UsageError(f"Quadric rank is defined for K_1,1 witnesses, this one lives in K_{witness.p},1")
        tensor = np.array(witness.tensor, dtype=np.int64)
        return exact_la.rank_dense((tensor + tensor.T) % p, p)


witness_service = WitnessService()
