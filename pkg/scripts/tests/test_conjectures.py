"""
Expected Betti tables and the predicates evaluated on diagrams
"""
from fractions import Fraction

import pytest

from syzygy.core.errors import UsageError
from syzygy.models.module import AuditEntry, NormalityAudit
from syzygy.schemas.betti import BettiDiagram, TableFamily
from syzygy.schemas.report import PredicateStatus
from syzygy.services.conjecture_service import conjecture_service
from syzygy.services.koszul_service import koszul_service

TWISTED_CUBIC = BettiDiagram.from_entries(4, 3, 2, {(0, 0): 1, (1, 1): 3, (2, 1): 2})

PASSING_AUDIT = NormalityAudit(entries=(AuditEntry(0, 1, 1), AuditEntry(1, 4, 4), AuditEntry(2, 7, 7)))
FAILING_AUDIT = NormalityAudit(entries=(AuditEntry(0, 1, 1), AuditEntry(1, 3, 3), AuditEntry(2, 5, 9)))


def family_for(genus: int, canonical: bool) -> TableFamily:
    if canonical:
        return TableFamily.CANONICAL_ODD if genus % 2 else TableFamily.CANONICAL_EVEN
    return TableFamily.PARACANONICAL_ODD if genus % 2 else TableFamily.PARACANONICAL_EVEN


def row(diagram: BettiDiagram, q: int):
    return [diagram.get(p, q) for p in range(diagram.p_max + 1)]


def test_canonical_genus_5():
    diagram = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 5).diagram
    assert diagram.num_vars == 5
    assert diagram.table == [[1, 0, 0, 0], [0, 3, 0, 0], [0, 0, 3, 0], [0, 0, 0, 1]]


def test_canonical_genus_6():
    diagram = conjecture_service.expected_table(TableFamily.CANONICAL_EVEN, 6).diagram
    assert row(diagram, 1) == [0, 6, 5, 0, 0]
    assert row(diagram, 2) == [0, 0, 5, 6, 0]
    assert diagram.get(4, 3) == 1


def test_canonical_genus_7():
    diagram = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 7).diagram
    assert row(diagram, 1) == [0, 10, 16, 0, 0, 0]
    assert row(diagram, 2) == [0, 0, 0, 16, 10, 0]


def test_paracanonical_tables():
    g7 = conjecture_service.expected_table(TableFamily.PARACANONICAL_ODD, 7).diagram
    assert (g7.get(1, 1), g7.get(1, 2), g7.get(2, 2)) == (3, 8, 27)
    g6 = conjecture_service.expected_table(TableFamily.PARACANONICAL_EVEN, 6).diagram
    assert row(g6, 1) == [0, 0, 0, 0]
    assert row(g6, 2) == [0, 10, 15, 6]
    g8 = conjecture_service.expected_table(TableFamily.PARACANONICAL_EVEN, 8).diagram
    assert g8.num_vars == 7
    assert g8.get(1, 1) == 7
    assert g8.get(2, 1) == 0


@pytest.mark.parametrize("genus", range(5, 14))
@pytest.mark.parametrize("canonical", [True, False])
def test_every_family_is_integral_and_consistent(genus, canonical):
    table = conjecture_service.expected_table(family_for(genus, canonical), genus)
    diagram = table.diagram
    assert all(b >= 0 for _, _, b in diagram.entries())
    assert table.degree == 2 * genus - 2
    if canonical:
        hilbert = conjecture_service.canonical_hilbert(genus, diagram.p_max + diagram.q_max)
        check = conjecture_service.hilbert_identity_check(diagram, hilbert, complete=True)
    else:
        check = conjecture_service.diagonal_identity_check(diagram, 2 * genus - 2, genus)
    assert check.passed, check.message
    assert conjecture_service.is_natural(diagram).status == PredicateStatus.PASS


def test_canonical_tables_are_self_dual():
    for genus in range(5, 12):
        diagram = conjecture_service.expected_table(family_for(genus, True), genus).diagram
        assert conjecture_service.duality_check(diagram, genus).passed


def test_expected_table_preconditions():
    with pytest.raises(UsageError):
        conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 6)
    with pytest.raises(UsageError):
        conjecture_service.expected_table(TableFamily.CANONICAL_EVEN, 2)
    with pytest.raises(UsageError):
        conjecture_service.expected_table(TableFamily.PARACANONICAL_ODD, 3)


def test_expected_table_window_is_clipped():
    table = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 7, p_max=2, q_max=1)
    assert table.diagram.table == [[1, 0, 0], [0, 10, 16]]
    assert any(term.p == 3 and term.q == 2 for term in table.terms)


def test_hilbert_sequences():
    assert conjecture_service.canonical_hilbert(5, 3) == [1, 5, 12, 20]
    assert conjecture_service.nonspecial_hilbert(7, 2, 3) == [1, 6, 13, 20]


def test_green_predicate():
    diagram = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 7).diagram
    assert conjecture_service.green_predicate(diagram, 3).status == PredicateStatus.PASS
    wrong = conjecture_service.green_predicate(diagram, 2)
    assert wrong.status == PredicateStatus.FAIL
    assert wrong.witness == (2, 2)
    assert conjecture_service.green_predicate(diagram, 0).status == PredicateStatus.UNSUPPORTED
    assert conjecture_service.green_predicate(diagram, 3, FAILING_AUDIT).status == PredicateStatus.UNSUPPORTED
    clipped = conjecture_service.expected_table(TableFamily.CANONICAL_ODD, 7, p_max=2).diagram
    assert conjecture_service.green_predicate(clipped, 3).status == PredicateStatus.UNDECIDABLE


def test_duality_detects_asymmetry():
    diagram = conjecture_service.expected_table(TableFamily.CANONICAL_EVEN, 6).diagram
    table = [list(r) for r in diagram.table]
    table[1][1] = 7
    broken = BettiDiagram(num_vars=6, p_max=4, q_max=3, table=table)
    result = conjecture_service.duality_check(broken, 6)
    assert result.status == PredicateStatus.FAIL
    assert result.witness == (1, 1)


def test_natural_and_purity():
    diagram = BettiDiagram.from_entries(7, 3, 2, {(0, 0): 1, (1, 1): 7, (2, 1): 1, (1, 2): 1, (2, 2): 35})
    result = conjecture_service.is_natural(diagram)
    assert result.status == PredicateStatus.FAIL
    assert result.witness == (1, 2)
    assert conjecture_service.purity_defects(diagram) == [1, 2]
    assert conjecture_service.is_natural(TWISTED_CUBIC).passed
    assert conjecture_service.purity_defects(TWISTED_CUBIC) == []


def test_two_row_shape():
    assert conjecture_service.two_row_check(TWISTED_CUBIC).status == PredicateStatus.UNDECIDABLE
    taller = BettiDiagram.from_entries(4, 3, 3, {(0, 0): 1, (1, 1): 3, (2, 1): 2})
    assert conjecture_service.two_row_check(taller).passed
    bad = BettiDiagram.from_entries(4, 3, 3, {(0, 0): 1, (2, 3): 1})
    assert conjecture_service.two_row_check(bad).witness == (2, 3)


def test_np_property():
    assert conjecture_service.np_property(TWISTED_CUBIC, PASSING_AUDIT, 1).passed
    assert conjecture_service.np_property(TWISTED_CUBIC, PASSING_AUDIT, 3).passed
    assert conjecture_service.np_property(TWISTED_CUBIC, FAILING_AUDIT, 1).status == PredicateStatus.FAIL
    assert conjecture_service.np_property(TWISTED_CUBIC, PASSING_AUDIT, 4).status == PredicateStatus.UNDECIDABLE
    quadric_syzygy = BettiDiagram.from_entries(4, 3, 2, {(0, 0): 1, (1, 1): 3, (1, 2): 1})
    result = conjecture_service.np_property(quadric_syzygy, PASSING_AUDIT, 1)
    assert result.witness == (1, 2)


def test_diagonal_identity():
    assert conjecture_service.diagonal_value(0, 3, 0) == 3
    assert conjecture_service.diagonal_value(1, 3, 0) == 2
    assert conjecture_service.diagonal_value(1, 14, 8) == 0
    assert conjecture_service.diagonal_value(2, 14, 8) == Fraction(-35)
    assert conjecture_service.diagonal_identity_check(TWISTED_CUBIC, 3, 0).passed
    assert conjecture_service.diagonal_identity_check(TWISTED_CUBIC, 4, 0).status == PredicateStatus.FAIL
    with pytest.raises(UsageError):
        conjecture_service.diagonal_value(0, 5, 5)


def test_hilbert_identity():
    assert conjecture_service.hilbert_identity_check(TWISTED_CUBIC, [1, 4, 7, 10]).passed
    result = conjecture_service.hilbert_identity_check(TWISTED_CUBIC, [1, 4, 8])
    assert result.status == PredicateStatus.FAIL
    assert result.witness == (2, 0)
    assert koszul_service.diagonal_sums([1, 4, 7, 10], 3) == [1, 0, -3, 2]


def test_prym_green_detects_an_unexpected_syzygy():
    expected = conjecture_service.expected_table(TableFamily.PARACANONICAL_EVEN, 8).diagram
    assert conjecture_service.prym_green_check(expected, 8).passed
    table = [list(r) for r in expected.table]
    table[1][2] = 1
    table[2][1] = 1
    jumped = BettiDiagram(num_vars=7, p_max=expected.p_max, q_max=expected.q_max, table=table)
    result = conjecture_service.prym_green_check(jumped, 8)
    assert result.status == PredicateStatus.FAIL
    assert result.witness == (1, 2)
    assert conjecture_service.diagonal_identity_check(jumped, 14, 8).passed


@pytest.mark.parametrize("genus", range(5, 14))
def test_green_holds_on_expected_canonical_tables(genus):
    diagram = conjecture_service.expected_table(family_for(genus, True), genus).diagram
    assert conjecture_service.green_predicate(diagram, (genus - 1) // 2).passed
