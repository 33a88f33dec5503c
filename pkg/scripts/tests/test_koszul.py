"""
Koszul differentials and Betti diagrams of modules with known resolutions
"""
from math import comb

import pytest

from syzygy.core.errors import MalformedInputError, TruncationError
from syzygy.schemas.betti import BettiDiagram
from syzygy.schemas.ring import RingSpec
from syzygy.services.gring_service import graded_ring_service
from syzygy.services.koszul_service import binomial, koszul_service


@pytest.fixture
def twisted_cubic(field):
    ideal = graded_ring_service.twisted_cubic_ideal(field)
    return graded_ring_service.quotient_module(ideal, 4, label="twisted cubic")


def test_binomial_outside_range():
    assert binomial(4, 2) == 6
    assert binomial(4, 5) == 0
    assert binomial(-1, 0) == 0


def test_first_differential_of_free_module_is_identity(field):
    ring = RingSpec(num_vars=2, field=field)
    module = graded_ring_service.free_module(ring, 2)
    d = koszul_service.koszul_differential(module, 1, 0)
    assert d.shape == (2, 2)
    assert d.entries() == [(0, 0, 1), (1, 1, 1)]


def test_differential_shapes_and_signs(field):
    ring = RingSpec(num_vars=3, field=field)
    module = graded_ring_service.free_module(ring, 2)
    d = koszul_service.koszul_differential(module, 2, 0)
    assert d.shape == (3 * 3, 3)
    # e_{01} -> x_0 e_1 - x_1 e_0
    column = [value for _, col, value in d.entries() if col == 0]
    assert sorted(column) == [1, field.p - 1]
    assert koszul_service.koszul_differential(module, 0, 1).shape == (0, 3)
    with pytest.raises(MalformedInputError):
        koszul_service.koszul_differential(module, -1, 0)


def test_strands_are_complexes(twisted_cubic):
    for p in range(1, 4):
        for q in range(0, 3):
            assert koszul_service.strand(twisted_cubic, p, q).is_complex()


def test_twisted_cubic_betti_table(twisted_cubic):
    diagram, reports = koszul_service.compute_diagram(twisted_cubic, 3, 2, threads=2, verify_complex=True)
    assert diagram.table == [[1, 0, 0, 0], [0, 3, 2, 0], [0, 0, 0, 0]]
    assert all(report.complex_ok for report in reports)
    assert koszul_service.hilbert_consistency(diagram, twisted_cubic) == []


def test_threads_do_not_change_the_diagram(twisted_cubic):
    serial = koszul_service.betti_diagram(twisted_cubic, 3, 2)
    parallel, _ = koszul_service.compute_diagram(twisted_cubic, 3, 2, threads=4)
    assert serial == parallel


def test_koszul_dim_matches_diagram(twisted_cubic):
    assert koszul_service.koszul_dim(twisted_cubic, 1, 1) == 3
    assert koszul_service.koszul_dim(twisted_cubic, 2, 1) == 2
    assert koszul_service.koszul_dim(twisted_cubic, 1, 2) == 0


@pytest.mark.parametrize("num_vars", [1, 2, 3, 4, 5, 6])
def test_residue_field_is_resolved_by_the_koszul_complex(field, num_vars):
    ring = RingSpec(num_vars=num_vars, field=field)
    module = graded_ring_service.residue_field_module(ring, max_degree=1)
    diagram, _ = koszul_service.compute_diagram(module, num_vars, 0)
    assert [diagram.get(p, 0) for p in range(num_vars + 1)] == [comb(num_vars, p) for p in range(num_vars + 1)]


def test_free_module_has_trivial_diagram(field):
    ring = RingSpec(num_vars=3, field=field)
    module = graded_ring_service.free_module(ring, 3)
    diagram, _ = koszul_service.compute_diagram(module, 3, 2)
    assert list(diagram.entries()) == [(p, q, 1 if (p, q) == (0, 0) else 0) for p in range(4) for q in range(3)]


def test_window_beyond_module_raises(twisted_cubic):
    with pytest.raises(TruncationError):
        koszul_service.compute_diagram(twisted_cubic, 3, 4)


def test_hilbert_from_diagram(twisted_cubic):
    diagram = koszul_service.betti_diagram(twisted_cubic, 3, 3)
    assert [koszul_service.hilbert_from_diagram(diagram, d) for d in range(5)] == [1, 4, 7, 10, 13]


def test_diagonal_sums_agree_with_diagram(twisted_cubic):
    diagram = koszul_service.betti_diagram(twisted_cubic, 3, 3)
    sums = koszul_service.diagonal_sums(twisted_cubic.hilbert_values(), 3, 3)
    assert sums == [1, 0, -3, 2]
    assert koszul_service.diagram_diagonals(diagram, 3) == sums
    with pytest.raises(TruncationError):
        koszul_service.diagram_diagonals(diagram, 4)
    with pytest.raises(MalformedInputError):
        koszul_service.diagonal_sums([1, 4], 3, 2)


def test_diagram_rendering_and_lookup():
    diagram = BettiDiagram.from_entries(4, 3, 2, {(0, 0): 1, (1, 1): 3, (2, 1): 2})
    assert diagram.get(1, 1) == 3
    assert diagram.get(-1, 0) == 0
    assert diagram.get(4, 0) is None
    assert diagram.column_totals() == [1, 3, 2, 0]
    lines = diagram.render().splitlines()
    assert lines[0].split() == ["0", "1", "2", "3"]
    assert lines[1].split() == ["total:", "1", "3", "2", "0"]
    assert lines[2].split() == ["0:", "1", ".", ".", "."]
    assert lines[3].split() == ["1:", ".", "3", "2", "."]


def test_diagram_rejects_negative_entries():
    with pytest.raises(ValueError):
        BettiDiagram(num_vars=2, p_max=1, q_max=0, table=[[1, -1]])
