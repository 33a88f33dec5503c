"""
Nodal plane curves and their adjoint canonical systems
"""
import logging
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from syzygy.core.config import defaults
from syzygy.core.errors import DegenerateModelError, UsageError
from syzygy.models.matrix import FpMatrix
from syzygy.schemas.curve import BundleKind, LineBundleData, NodalPlaneCurve
from syzygy.schemas.field import PrimeFieldConfig
from syzygy.schemas.ring import RingSpec
from syzygy.services.curve_service import distinct_elements
from syzygy.services.exactla_service import exact_la
from syzygy.services.gring_service import graded_ring_service
from syzygy.utils.polynomials import (
    affine_derivatives,
    affine_roots,
    evaluate_forms,
    form_derivative_rows,
    line_restriction,
)

logger = logging.getLogger(__name__)


class PlaneCurveService:
    """Random plane curves of degree d singular at delta random points"""

    def _monomials(self, field: PrimeFieldConfig, degree: int):
        return graded_ring_service.monomial_basis(RingSpec(num_vars=3, field=field), degree)

    def sample_count(self, degree: int, genus: int, max_degree: int) -> int:
        """Bezout: a form of degree q(d-3) not containing the curve meets it in q d (d-3) points"""
        return max_degree * degree * max(degree - 3, 0) + 2 * genus + defaults.sample_margin

    def plane_curve_with_nodes(
        self,
        field: PrimeFieldConfig,
        degree: int,
        nodes: int,
        seed: int = 0,
        max_degree: Optional[int] = None,
    ) -> NodalPlaneCurve:
        """
        A random member of the degree-d forms singular at `nodes` random affine
        points, with certified nodes and enough smooth sample points for the
        adjoint system up to max_degree.
        """
        p = field.p
        if degree < 3:
            raise UsageError(f"Plane curves need degree >= 3, got {degree}")
        monomials = self._monomials(field, degree)
        if len(monomials) - 3 * nodes <= 1:
            raise UsageError(f"No degree-{degree} curves with {nodes} assigned singular points")
        genus = (degree - 1) * (degree - 2) // 2 - nodes
        if genus < 0:
            raise UsageError(f"{nodes} nodes exceed the arithmetic genus of a degree-{degree} curve")
        if max_degree is None:
            max_degree = defaults.canonical_q_max + 1

        rng = np.random.default_rng(seed)
        xs = distinct_elements(rng, nodes, p)
        ys = rng.integers(0, p, size=nodes).tolist()
        node_points = list(zip(xs, ys))

        if node_points:
            conditions = FpMatrix.from_dense(
                np.vstack([form_derivative_rows(monomials, point, p) for point in node_points]), p
            )
        else:
            conditions = FpMatrix.zeros(0, len(monomials), p)
        kernel = exact_la.kernel_basis(conditions)
        if len(kernel) != len(monomials) - 3 * nodes:
            raise DegenerateModelError(
                f"Singularity conditions at {nodes} points are dependent", seed=seed
            )
        weights = rng.integers(1, p, size=len(kernel))
        coefficients = np.zeros(len(monomials), dtype=np.int64)
        for w, vector in zip(weights.tolist(), kernel):
            coefficients = (coefficients + w * vector) % p
        coefficients = coefficients.tolist()

        for point in node_points:
            values = affine_derivatives(coefficients, monomials, point, p)
            if values["f"] or values["fx"] or values["fy"]:
                raise DegenerateModelError(f"Curve is not singular at {point}", seed=seed)
            hessian = (values["fxx"] * values["fyy"] - values["fxy"] ** 2) % p
            if hessian == 0:
                raise DegenerateModelError(f"Singular point {point} is not an ordinary node", seed=seed)

        count = self.sample_count(degree, genus, max_degree)
        samples = self._harvest_points(coefficients, monomials, degree, node_points, count, rng, p)
        logger.info(f"Plane curve of degree {degree} with {nodes} nodes (genus {genus}) from seed {seed}, {count} sample points")
        return NodalPlaneCurve(
            field=field,
            degree=degree,
            coefficients=coefficients,
            nodes=node_points,
            sample_points=samples,
            seed=seed,
        )

    def _harvest_points(
        self,
        coefficients: List[int],
        monomials,
        degree: int,
        nodes: List[Tuple[int, int]],
        count: int,
        rng: np.random.Generator,
        p: int,
    ) -> List[Tuple[int, int]]:
        """Smooth affine points found by intersecting the curve with random lines x = const"""
        node_set = set(nodes)
        used_x = {x for x, _ in nodes}
        points: List[Tuple[int, int]] = []
        budget = 50 * count + 100
        while len(points) < count:
            if budget == 0:
                raise DegenerateModelError(f"Found only {len(points)} of {count} smooth points")
            budget -= 1
            x = int(rng.integers(0, p))
            if x in used_x:
                continue
            used_x.add(x)
            restricted = line_restriction(coefficients, monomials, x, degree, p)
            if not any(restricted):
                raise DegenerateModelError(f"The line x = {x} is a component of the curve")
            for y in affine_roots(restricted, p):
                point = (x, y)
                if point in node_set:
                    continue
                values = affine_derivatives(coefficients, monomials, point, p)
                if values["fx"] == 0 and values["fy"] == 0:
                    continue
                points.append(point)
                if len(points) == count:
                    break
        return points

    def adjoint_canonical_sections(self, curve: NodalPlaneCurve) -> LineBundleData:
        """Forms of degree d-3 through the nodes, evaluated at the sample points"""
        p = curve.field.p
        d = curve.degree
        monomials = self._monomials(curve.field, d - 3)
        if curve.nodes:
            conditions = FpMatrix.from_dense(
                evaluate_forms(np.eye(len(monomials), dtype=np.int64), monomials, curve.nodes, p).T, p
            )
        else:
            conditions = FpMatrix.zeros(0, len(monomials), p)
        kernel = exact_la.kernel_basis(conditions)
        expected = comb(d - 1, 2) - len(curve.nodes)
        if len(kernel) != expected or expected != curve.genus:
            raise DegenerateModelError(
                f"Adjoint system has dimension {len(kernel)}, genus is {curve.genus}", seed=curve.seed
            )
        values = evaluate_forms(np.array(kernel, dtype=np.int64), monomials, curve.sample_points, p)
        return LineBundleData(
            field=curve.field,
            kind=BundleKind.ADJOINT_CANONICAL,
            degree=2 * curve.genus - 2,
            genus=curve.genus,
            h0=curve.genus,
            zero_bound=d * (d - 3),
            sample_points=np.array(curve.sample_points, dtype=np.int64),
            section_values=values,
            label=f"plane d={d} nodes={len(curve.nodes)} seed={curve.seed}",
        )


plane_curve_service = PlaneCurveService()
