"""
Curve models over F_p and their embedded coordinate rings

A g-nodal rational curve is P^1 with a_i glued to b_i. Sections of a line
bundle are polynomials in the affine coordinate t subject to one gluing
condition per node; everything downstream only sees their values at random
sample points, which is enough once the sample set is larger than the number
of zeros any nonzero element of the relevant degree can have.
"""
import logging
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from syzygy.core.config import defaults
from syzygy.core.errors import (
    DegenerateModelError,
    EvaluationInjectivityError,
    FieldTooSmallError,
    UsageError,
)
from syzygy.models.matrix import FpMatrix
from syzygy.models.module import AuditEntry, CoordinateRing, GradedModule, NormalityAudit
from syzygy.schemas.curve import BundleKind, LineBundleData, NodalRationalCurve, TorsionBundle
from syzygy.schemas.field import PrimeFieldConfig
from syzygy.schemas.ring import RingSpec
from syzygy.services.exactla_service import exact_la
from syzygy.utils.polynomials import evaluation_matrix, product_of_differences

logger = logging.getLogger(__name__)

T = TypeVar("T")


def distinct_elements(rng: np.random.Generator, count: int, p: int, exclude: Sequence[int] = ()) -> List[int]:
    """count distinct random elements of F_p avoiding `exclude`, in draw order"""
    excluded = {int(x) % p for x in exclude}
    if p - len(excluded) < count:
        raise FieldTooSmallError(f"F_{p} has fewer than {count} elements outside the {len(excluded)} excluded ones")
    chosen: List[int] = []
    seen = set(excluded)
    while len(chosen) < count:
        for x in rng.integers(0, p, size=2 * (count - len(chosen)) + 8).tolist():
            if x not in seen:
                seen.add(x)
                chosen.append(x)
                if len(chosen) == count:
                    break
    return chosen


class CurveService:
    """Nodal rational curve models, their line bundles and coordinate rings"""

    # ------------------------------------------------------------- curves

    def rational_nodal_curve(self, field: PrimeFieldConfig, genus: int, seed: int = 0) -> NodalRationalCurve:
        if genus < 0:
            raise UsageError(f"Genus must be nonnegative, got {genus}")
        rng = np.random.default_rng(seed)
        points = distinct_elements(rng, 2 * genus, field.p)
        nodes = [(points[2 * i], points[2 * i + 1]) for i in range(genus)]
        logger.info(f"Rational {genus}-nodal curve over F_{field.p} from seed {seed}")
        return NodalRationalCurve(field=field, genus=genus, nodes=nodes, seed=seed)

    def sample_points(self, curve: NodalRationalCurve, count: int) -> np.ndarray:
        """count affine parameters off the nodes; a prefix of the same stream for every count"""
        rng = np.random.default_rng([curve.seed, 1])
        return np.array(distinct_elements(rng, count, curve.field.p, curve.node_points), dtype=np.int64)

    def sample_count(self, zero_bound: int, genus: int, max_degree: int) -> int:
        return max_degree * zero_bound + 2 * genus + defaults.sample_margin

    # -------------------------------------------------- degree-0 bundles

    def torsion_bundle(self, field: PrimeFieldConfig, genus: int, level: int, seed: int = 0) -> TorsionBundle:
        """eta with c_i = zeta^{k_i}; c_1 = zeta makes its order exactly `level`"""
        if level < 2:
            raise UsageError(f"A nontrivial torsion bundle needs level >= 2, got {level}")
        if field.required_root_order % level != 0:
            raise UsageError(f"F_{field.p} was not set up with {level}-th roots of unity")
        if genus < 1:
            raise UsageError("A torsion bundle needs at least one node")
        rng = np.random.default_rng([seed, 3])
        zeta = pow(field.zeta, field.required_root_order // level, field.p)
        exponents = [1] + rng.integers(0, level, size=genus - 1).tolist()
        constants = [pow(zeta, int(k), field.p) for k in exponents]
        return TorsionBundle(field=field, level=level, constants=constants)

    def general_eta(self, field: PrimeFieldConfig, genus: int, seed: int = 0) -> TorsionBundle:
        """Random gluing constants, no torsion condition"""
        if genus < 1:
            raise UsageError("A degree-0 bundle with nontrivial gluing needs at least one node")
        rng = np.random.default_rng([seed, 4])
        constants = distinct_elements(rng, genus, field.p, exclude=(0, 1))
        return TorsionBundle(field=field, level=0, constants=constants)

    # ------------------------------------------------------------ sections

    def _residue_conditions(self, curve: NodalRationalCurve, constants: Sequence[int], top: int) -> FpMatrix:
        """Row i: c_i Res_{a_i} + Res_{b_i} of f(t) dt / prod (t - a_j)(t - b_j), over f = sum f_k t^k"""
        p = curve.field.p
        roots = curve.node_points
        rows = []
        for (a, b), c in zip(curve.nodes, constants):
            weight_a = c * pow(product_of_differences(a, [x for x in roots if x != a], p), -1, p) % p
            weight_b = pow(product_of_differences(b, [x for x in roots if x != b], p), -1, p)
            rows.append(
                [(weight_a * pow(a, k, p) + weight_b * pow(b, k, p)) % p for k in range(top + 1)]
            )
        if not rows:
            return FpMatrix.zeros(0, top + 1, p)
        return FpMatrix.from_dense(np.array(rows, dtype=np.int64), p)

    def _gluing_conditions(self, curve: NodalRationalCurve, constants: Sequence[int], top: int) -> FpMatrix:
        """Row i: f(b_i) - c_i f(a_i) over f = sum f_k t^k"""
        p = curve.field.p
        rows = [
            [(pow(b, k, p) - c * pow(a, k, p)) % p for k in range(top + 1)]
            for (a, b), c in zip(curve.nodes, constants)
        ]
        if not rows:
            return FpMatrix.zeros(0, top + 1, p)
        return FpMatrix.from_dense(np.array(rows, dtype=np.int64), p)

    def _bundle_from_conditions(
        self,
        curve: NodalRationalCurve,
        conditions: FpMatrix,
        expected_h0: int,
        kind: BundleKind,
        degree: int,
        max_degree: int,
        sample_count: Optional[int],
        level: int = 1,
        constants: Sequence[int] = (),
    ) -> LineBundleData:
        p = curve.field.p
        kernel = exact_la.kernel_basis(conditions)
        if len(kernel) != expected_h0:
            raise DegenerateModelError(
                f"{kind.value} sections: h0 = {len(kernel)}, expected {expected_h0}",
                seed=curve.seed,
            )
        count = sample_count if sample_count is not None else self.sample_count(degree, curve.genus, max_degree)
        points = self.sample_points(curve, count)
        coefficients = FpMatrix.from_dense(np.array(kernel, dtype=np.int64), p)
        powers = FpMatrix.from_dense(evaluation_matrix(points, conditions.cols - 1, p).T, p)
        values = coefficients.matmul(powers).to_dense()
        logger.info(f"{kind.value} bundle of degree {degree} on genus {curve.genus}: h0={expected_h0}, {count} sample points")
        return LineBundleData(
            field=curve.field,
            kind=kind,
            degree=degree,
            genus=curve.genus,
            h0=expected_h0,
            zero_bound=degree,
            sample_points=points,
            section_values=values,
            level=level,
            constants=list(constants),
            label=f"{kind.value} g={curve.genus} seed={curve.seed}",
        )

    def canonical_sections(
        self, curve: NodalRationalCurve, max_degree: Optional[int] = None, sample_count: Optional[int] = None
    ) -> LineBundleData:
        """omega_C: f(t) dt / prod(t - a_i)(t - b_i), deg f <= 2g-2, Res_{a_i} + Res_{b_i} = 0"""
        g = curve.genus
        if g < 1:
            raise UsageError("The dualizing sheaf of P^1 has no sections")
        if max_degree is None:
            max_degree = defaults.canonical_q_max + 1
        conditions = self._residue_conditions(curve, [1] * g, 2 * g - 2)
        return self._bundle_from_conditions(
            curve, conditions, g, BundleKind.CANONICAL, 2 * g - 2, max_degree, sample_count
        )

    def paracanonical_sections(
        self,
        curve: NodalRationalCurve,
        eta: TorsionBundle,
        max_degree: Optional[int] = None,
        sample_count: Optional[int] = None,
    ) -> LineBundleData:
        """omega_C (x) eta: twisted residue conditions c_i Res_{a_i} + Res_{b_i} = 0"""
        g = curve.genus
        if len(eta.constants) != g:
            raise UsageError(f"eta has {len(eta.constants)} gluing constants, the curve has {g} nodes")
        if eta.is_trivial:
            raise UsageError("Paracanonical sections need a nontrivial eta")
        if max_degree is None:
            max_degree = defaults.canonical_q_max + 1
        conditions = self._residue_conditions(curve, eta.constants, 2 * g - 2)
        return self._bundle_from_conditions(
            curve,
            conditions,
            g - 1,
            BundleKind.PARACANONICAL,
            2 * g - 2,
            max_degree,
            sample_count,
            level=eta.level,
            constants=eta.constants,
        )

    def twist_sections(
        self,
        curve: NodalRationalCurve,
        degree: int,
        eta: Optional[TorsionBundle] = None,
        max_degree: Optional[int] = None,
        sample_count: Optional[int] = None,
    ) -> LineBundleData:
        """
        Degree-d bundle: polynomials f of degree <= d with f(b_i) = lambda_i f(a_i).
        The lambda_i come from eta, or are drawn at random for a general bundle.
        """
        g = curve.genus
        if degree < 2 * g + 1:
            raise UsageError(f"Twist bundles need degree >= 2g+1 = {2 * g + 1}, got {degree}")
        if max_degree is None:
            max_degree = defaults.nonspecial_q_max + 1
        if eta is None:
            eta = self.general_eta(curve.field, g, curve.seed) if g else TorsionBundle(field=curve.field, level=0, constants=[])
        return self._glued_sections(curve, degree, eta, max_degree, sample_count)

    def _glued_sections(
        self,
        curve: NodalRationalCurve,
        degree: int,
        eta: TorsionBundle,
        max_degree: int,
        sample_count: Optional[int],
    ) -> LineBundleData:
        g = curve.genus
        if len(eta.constants) != g:
            raise UsageError(f"eta has {len(eta.constants)} gluing constants, the curve has {g} nodes")
        conditions = self._gluing_conditions(curve, eta.constants, degree)
        return self._bundle_from_conditions(
            curve,
            conditions,
            degree - g + 1,
            BundleKind.TWIST,
            degree,
            max_degree,
            sample_count,
            level=eta.level,
            constants=eta.constants,
        )

    def custom_sections(
        self,
        field: PrimeFieldConfig,
        sample_points,
        values,
        degree: int,
        genus: int = 0,
        zero_bound: Optional[int] = None,
        label: str = "custom",
    ) -> LineBundleData:
        """Caller-supplied section values; independence is checked, not assumed"""
        values = np.asarray(values, dtype=np.int64) % field.p
        if values.ndim != 2:
            raise UsageError(f"Section values must be a 2-d array, got shape {values.shape}")
        if exact_la.rank_dense(values, field.p) != values.shape[0]:
            raise DegenerateModelError("Custom sections are linearly dependent on the sample points")
        return LineBundleData(
            field=field,
            kind=BundleKind.CUSTOM,
            degree=degree,
            genus=genus,
            h0=values.shape[0],
            zero_bound=degree if zero_bound is None else zero_bound,
            sample_points=np.asarray(sample_points, dtype=np.int64),
            section_values=values,
            label=label,
        )

    def p1_split(
        self, field: PrimeFieldConfig, d1: int, d2: int, max_degree: int = 3, seed: int = 0
    ) -> Tuple[LineBundleData, LineBundleData, LineBundleData]:
        """O(d1 + d2), O(d1) and O(d2) on P^1 evaluated at one shared sample set"""
        if d1 < 1 or d2 < 1:
            raise UsageError(f"Both factors need at least two sections (r_1, r_2 >= 1); got d1={d1}, d2={d2}")
        line = self.rational_nodal_curve(field, 0, seed)
        count = self.sample_count(d1 + d2, 0, max_degree)
        total = self.twist_sections(line, d1 + d2, max_degree=max_degree, sample_count=count)
        first = self.twist_sections(line, d1, max_degree=max_degree, sample_count=count)
        second = self.twist_sections(line, d2, max_degree=max_degree, sample_count=count)
        return total, first, second

    def nodal_split(
        self, field: PrimeFieldConfig, genus: int, d1: int, d2: int, max_degree: int = 3, seed: int = 0
    ) -> Tuple[LineBundleData, LineBundleData, LineBundleData]:
        """
        L = L_1 (x) L_2 on the g-nodal rational curve. L_k glues f(b_i) = lambda_i f(a_i)
        with its own general constants; L glues with their products. All three
        are evaluated at one shared sample set.
        """
        lowest = max(2 * genus - 1, genus + 1)
        if d1 < lowest or d2 < lowest:
            raise UsageError(
                f"On a {genus}-nodal curve both factors need degree >= {lowest} (nonspecial, r >= 1); got d1={d1}, d2={d2}"
            )
        p = field.p
        curve = self.rational_nodal_curve(field, genus, seed)
        rng = np.random.default_rng([seed, 5])
        constants = distinct_elements(rng, 2 * genus, p, exclude=(0, 1))
        first_eta = TorsionBundle(field=field, level=0, constants=constants[:genus])
        second_eta = TorsionBundle(field=field, level=0, constants=constants[genus:])
        total_eta = TorsionBundle(
            field=field,
            level=0,
            constants=[a * b % p for a, b in zip(first_eta.constants, second_eta.constants)],
        )
        count = self.sample_count(d1 + d2, genus, max_degree)
        total = self._glued_sections(curve, d1 + d2, total_eta, max_degree, count)
        first = self._glued_sections(curve, d1, first_eta, max_degree, count)
        second = self._glued_sections(curve, d2, second_eta, max_degree, count)
        return total, first, second

    # ---------------------------------------------------- coordinate ring

    def expected_dimension(self, bundle: LineBundleData, q: int) -> int:
        """1, h0, then Riemann-Roch q deg - g + 1"""
        if q == 0:
            return 1
        if q == 1:
            return bundle.h0
        return q * bundle.degree - bundle.genus + 1

    def coordinate_ring(self, bundle: LineBundleData, max_degree: int) -> CoordinateRing:
        """
        Pieces 0..max_degree of the homogeneous coordinate ring of the curve
        embedded by `bundle`, inside functions on the sample points.
        """
        p = bundle.field.p
        n = bundle.sample_count
        if n <= max_degree * bundle.zero_bound:
            raise EvaluationInjectivityError(
                f"{n} sample points cannot separate sections of degree {max_degree} "
                f"(zero bound {max_degree * bundle.zero_bound})"
            )
        sections = bundle.section_values % p
        h0 = sections.shape[0]

        bases: Dict[int, np.ndarray] = {}
        pivots: Dict[int, List[int]] = {}
        bases[0], pivots[0] = exact_la.rref(np.ones((1, n), dtype=np.int64), p)
        bases[1], pivots[1] = exact_la.rref(sections, p)
        if len(pivots[1]) != h0:
            raise DegenerateModelError(f"Only {len(pivots[1])} of {h0} sections are independent on the sample points")
        for q in range(2, max_degree + 1):
            products = (sections[:, None, :] * bases[q - 1][None, :, :]) % p
            bases[q], pivots[q] = exact_la.rref(products.reshape(-1, n), p)

        mult: Dict[Tuple[int, int], FpMatrix] = {}
        for q in range(max_degree):
            for i in range(h0):
                image = sections[i][None, :] * bases[q] % p
                mult[(i, q)] = FpMatrix.from_dense(image[:, pivots[q + 1]].T, p)

        dims = {q: len(pivots[q]) for q in range(max_degree + 1)}
        audit = NormalityAudit(
            entries=tuple(
                AuditEntry(degree=q, dimension=dims[q], expected=self.expected_dimension(bundle, q))
                for q in range(max_degree + 1)
            )
        )
        if not audit.passed:
            failure = audit.first_failure()
            logger.warning(
                f"{bundle.label}: degree-{failure.degree} piece has dimension {failure.dimension}, "
                f"Riemann-Roch gives {failure.expected}"
            )
        module = GradedModule(
            ring=RingSpec(num_vars=h0, field=bundle.field),
            min_degree=0,
            max_degree=max_degree,
            piece_dims=dims,
            mult=mult,
            label=bundle.label,
        )
        return CoordinateRing(module=module, bases=bases, pivots=pivots, audit=audit, sections=sections)

    def quadric_count(self, ring: CoordinateRing) -> int:
        """dim I(2) = C(r+2, 2) - dim R_2: the quadrics containing the curve"""
        h0 = ring.module.ring.num_vars
        return comb(h0 + 1, 2) - ring.module.dim(2)

    def normality_expected(self, bundle: LineBundleData) -> bool:
        """Whether Sym^2 H^0(L) is large enough for the degree-2 audit to pass at all"""
        return comb(bundle.h0 + 1, 2) >= self.expected_dimension(bundle, 2)

    # -------------------------------------------------------------- redraws

    def with_redraws(
        self, builder: Callable[[int], T], seed: int, attempts: Optional[int] = None
    ) -> Tuple[T, int, List[Dict[str, object]]]:
        """
        builder(seed), builder(seed + 1), ... until one does not raise
        DegenerateModelError. Returns (result, seed used, failure chain).
        """
        attempts = attempts or defaults.max_redraws
        failures: List[Dict[str, object]] = []
        for offset in range(attempts):
            current = seed + offset
            try:
                return builder(current), current, failures
            except DegenerateModelError as e:
                logger.info(f"Seed {current} rejected: {e.detail}")
                failures.append({"seed": current, "error": e.detail})
        raise DegenerateModelError(
            f"No usable model in {attempts} draws starting from seed {seed}",
            seed=seed,
            details={"failures": failures},
        )


curve_service = CurveService()
