"""
Nodal rational and plane curve models, their bundles and coordinate rings
"""
import numpy as np
import pytest
from pydantic import ValidationError

from syzygy.core.errors import DegenerateModelError, EvaluationInjectivityError, FieldTooSmallError, UsageError
from syzygy.schemas.curve import BundleKind, NodalRationalCurve, TorsionBundle
from syzygy.schemas.ring import RingSpec
from syzygy.services.curve_service import curve_service, distinct_elements
from syzygy.services.gring_service import graded_ring_service
from syzygy.services.koszul_service import koszul_service
from syzygy.services.plane_curve_service import plane_curve_service
from syzygy.utils.polynomials import affine_derivatives, affine_roots, evaluate, evaluation_matrix, evaluate_forms


def test_distinct_elements(small_field):
    rng = np.random.default_rng(0)
    values = distinct_elements(rng, 20, small_field.p, exclude=[0, 1])
    assert len(set(values)) == 20
    assert not {0, 1} & set(values)
    with pytest.raises(FieldTooSmallError):
        distinct_elements(rng, 100, small_field.p, exclude=[0, 1, 2])


def test_rational_nodal_curve_is_reproducible(field):
    first = curve_service.rational_nodal_curve(field, 6, seed=11)
    second = curve_service.rational_nodal_curve(field, 6, seed=11)
    assert first.nodes == second.nodes
    assert len(set(first.node_points)) == 12
    samples = curve_service.sample_points(first, 40)
    assert not set(samples.tolist()) & set(first.node_points)
    with pytest.raises(UsageError):
        curve_service.rational_nodal_curve(field, -1)


def test_curve_rejects_repeated_node_points(field):
    with pytest.raises(ValidationError):
        NodalRationalCurve(field=field, genus=2, nodes=[(1, 2), (2, 3)])


def test_sample_count():
    assert curve_service.sample_count(8, 5, 4) == 4 * 8 + 10 + 16


def test_polynomial_helpers(small_field):
    p = small_field.p
    # 2 + 3t + t^2 = (t + 1)(t + 2)
    assert evaluate([2, 3, 1], [0, 1, 5], p).tolist() == [2, 6, 42]
    assert affine_roots([2, 3, 1], p) == [p - 2, p - 1]
    assert affine_roots([5], p) == []
    assert evaluation_matrix([2, 3], 2, p).tolist() == [[1, 2, 4], [1, 3, 9]]


def test_torsion_bundle_has_requested_order(field_level2, field_level3):
    eta = curve_service.torsion_bundle(field_level2, 5, 2, seed=1)
    assert eta.order() == 2
    assert not eta.is_trivial
    eta3 = curve_service.torsion_bundle(field_level3, 7, 3, seed=1)
    assert eta3.order() == 3
    with pytest.raises(UsageError):
        curve_service.torsion_bundle(field_level2, 5, 3)
    with pytest.raises(UsageError):
        curve_service.torsion_bundle(field_level2, 5, 1)


def test_general_eta_is_not_torsion(field):
    eta = curve_service.general_eta(field, 4, seed=2)
    assert eta.level == 0
    assert eta.order() is None
    assert not eta.is_trivial


def test_torsion_constants_are_validated(field_level2):
    with pytest.raises(ValidationError):
        TorsionBundle(field=field_level2, level=2, constants=[3])


def test_canonical_genus_3_is_a_plane_quartic(field):
    curve = curve_service.rational_nodal_curve(field, 3, seed=0)
    bundle = curve_service.canonical_sections(curve, max_degree=3)
    assert bundle.kind == BundleKind.CANONICAL
    assert bundle.h0 == 3
    assert bundle.degree == 4
    ring = curve_service.coordinate_ring(bundle, 3)
    assert ring.module.hilbert_values() == [1, 3, 6, 10]
    assert ring.audit.passed
    assert curve_service.quadric_count(ring) == 0


def test_canonical_genus_4_lies_on_one_quadric(field):
    curve = curve_service.rational_nodal_curve(field, 4, seed=0)
    ring = curve_service.coordinate_ring(curve_service.canonical_sections(curve, max_degree=3), 3)
    assert ring.module.hilbert_values() == [1, 4, 9, 15]
    assert curve_service.quadric_count(ring) == 1


def test_coordinate_ring_multiplication_commutes(field):
    curve = curve_service.rational_nodal_curve(field, 4, seed=5)
    ring = curve_service.coordinate_ring(curve_service.canonical_sections(curve, max_degree=3), 3)
    left = ring.module.multiplication(1, 1).matmul(ring.module.multiplication(0, 0))
    right = ring.module.multiplication(0, 1).matmul(ring.module.multiplication(1, 0))
    assert left.entries() == right.entries()


def test_too_few_sample_points(field):
    curve = curve_service.rational_nodal_curve(field, 3, seed=0)
    bundle = curve_service.canonical_sections(curve, sample_count=5)
    with pytest.raises(EvaluationInjectivityError):
        curve_service.coordinate_ring(bundle, 2)


def test_paracanonical_genus_5_is_not_projectively_normal(field_level2):
    curve = curve_service.rational_nodal_curve(field_level2, 5, seed=0)
    eta = curve_service.torsion_bundle(field_level2, 5, 2, seed=0)
    bundle = curve_service.paracanonical_sections(curve, eta, max_degree=3)
    assert bundle.h0 == 4
    assert bundle.level == 2
    assert not curve_service.normality_expected(bundle)
    ring = curve_service.coordinate_ring(bundle, 3)
    assert ring.audit.first_failure().degree == 2


def test_paracanonical_needs_nontrivial_eta(field):
    curve = curve_service.rational_nodal_curve(field, 5, seed=0)
    trivial = TorsionBundle(field=field, level=1, constants=[1] * 5)
    with pytest.raises(UsageError):
        curve_service.paracanonical_sections(curve, trivial)


def test_twist_sections_are_nonspecial(field):
    curve = curve_service.rational_nodal_curve(field, 2, seed=3)
    bundle = curve_service.twist_sections(curve, 5, max_degree=3)
    assert bundle.h0 == 4
    assert curve_service.normality_expected(bundle)
    ring = curve_service.coordinate_ring(bundle, 3)
    assert ring.audit.passed
    assert ring.module.hilbert_values() == [1, 4, 9, 14]
    with pytest.raises(UsageError):
        curve_service.twist_sections(curve, 4)


def test_custom_sections_fail_the_audit_in_degree_2(field):
    t = np.arange(1, 21, dtype=np.int64)
    values = np.stack([np.ones_like(t), t ** 2, t ** 4])
    bundle = curve_service.custom_sections(field, t, values, degree=4)
    ring = curve_service.coordinate_ring(bundle, 2)
    failure = ring.audit.first_failure()
    assert (failure.degree, failure.dimension, failure.expected) == (2, 5, 9)
    with pytest.raises(DegenerateModelError):
        curve_service.custom_sections(field, t, np.stack([t, 2 * t]), degree=1)


def test_p1_split_shares_samples(field):
    total, first, second = curve_service.p1_split(field, 1, 2, max_degree=2)
    assert (total.h0, first.h0, second.h0) == (4, 2, 3)
    assert np.array_equal(total.sample_points, first.sample_points)
    assert np.array_equal(total.sample_points, second.sample_points)
    with pytest.raises(UsageError):
        curve_service.p1_split(field, 0, 2)


def test_with_redraws_skips_degenerate_seeds():
    def builder(seed: int) -> int:
        if seed < 12:
            raise DegenerateModelError(f"seed {seed} is bad", seed=seed)
        return seed * 2

    result, used, failures = curve_service.with_redraws(builder, 10)
    assert (result, used) == (24, 12)
    assert [failure["seed"] for failure in failures] == [10, 11]
    with pytest.raises(DegenerateModelError) as e:
        curve_service.with_redraws(builder, 0, attempts=3)
    assert len(e.value.details["failures"]) == 3


def test_plane_quintic_with_one_node(field):
    curve = plane_curve_service.plane_curve_with_nodes(field, 5, 1, seed=0, max_degree=2)
    monomials = graded_ring_service.monomial_basis(RingSpec(num_vars=3, field=field), 5)
    assert curve.genus == 5
    node = curve.nodes[0]
    values = affine_derivatives(curve.coefficients, monomials, node, field.p)
    assert (values["f"], values["fx"], values["fy"]) == (0, 0, 0)
    assert (values["fxx"] * values["fyy"] - values["fxy"] ** 2) % field.p != 0
    on_curve = evaluate_forms(np.array([curve.coefficients]), monomials, curve.sample_points, field.p)
    assert not np.any(on_curve)

    bundle = plane_curve_service.adjoint_canonical_sections(curve)
    assert bundle.kind == BundleKind.ADJOINT_CANONICAL
    assert (bundle.h0, bundle.degree) == (5, 8)
    ring = curve_service.coordinate_ring(bundle, 2)
    assert ring.module.hilbert_values() == [1, 5, 12]


def test_plane_curve_preconditions(field):
    with pytest.raises(UsageError):
        plane_curve_service.plane_curve_with_nodes(field, 2, 0)
    with pytest.raises(UsageError):
        plane_curve_service.plane_curve_with_nodes(field, 4, 4)


def test_canonical_genus_5_betti_table(field):
    curve = curve_service.rational_nodal_curve(field, 5, seed=0)
    ring = curve_service.coordinate_ring(curve_service.canonical_sections(curve), 4)
    assert ring.audit.passed
    diagram, _ = koszul_service.compute_diagram(ring.module, 3, 3, verify_complex=True)
    assert diagram.table == [[1, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]]


def test_diagram_does_not_depend_on_the_order_of_the_sections(field):
    curve = curve_service.rational_nodal_curve(field, 1, seed=2)
    bundle = curve_service.twist_sections(curve, 4, max_degree=3)
    shuffled = curve_service.custom_sections(
        field, bundle.sample_points, bundle.section_values[[3, 0, 2, 1]], degree=4, genus=1
    )
    first = koszul_service.betti_diagram(curve_service.coordinate_ring(bundle, 3).module, 3, 2)
    second = koszul_service.betti_diagram(curve_service.coordinate_ring(shuffled, 3).module, 3, 2)
    assert first == second
    # elliptic normal quartic: complete intersection of two quadrics
    assert (first.get(1, 1), first.get(2, 1), first.get(1, 2), first.get(2, 2)) == (2, 0, 0, 1)


def test_nodal_split_factors_multiply_into_the_total(field):
    total, first, second = curve_service.nodal_split(field, 2, 3, 3, max_degree=2, seed=4)
    assert (total.h0, first.h0, second.h0) == (5, 2, 2)
    assert total.sample_points.tolist() == first.sample_points.tolist() == second.sample_points.tolist()
    assert [a * b % field.p for a, b in zip(first.constants, second.constants)] == total.constants
    ring = curve_service.coordinate_ring(total, 2)
    assert ring.audit.passed
    with pytest.raises(UsageError):
        curve_service.nodal_split(field, 2, 2, 3)
