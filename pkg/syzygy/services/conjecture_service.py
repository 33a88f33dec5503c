"""
Expected Betti tables of general curves and predicates on computed diagrams
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from syzygy.core.errors import FormulaError, UsageError
from syzygy.models.module import CoordinateRing, NormalityAudit
from syzygy.schemas.betti import BettiDiagram, ExpectedTable, FormulaTerm, TableFamily
from syzygy.schemas.report import PredicateResult, PredicateStatus
from syzygy.services.koszul_service import binomial, koszul_service

logger = logging.getLogger(__name__)

Rule = Callable[[int, int], Fraction]


def _c(n: int, k: int) -> Fraction:
    return Fraction(binomial(n, k))


def _result(name: str, status: PredicateStatus, message: str, witness=None, **details) -> PredicateResult:
    return PredicateResult(name=name, status=status, witness=witness, message=message, details=details)


class ConjectureService:
    """Closed formulas for general canonical and paracanonical curves, and checks against them"""

    # ----------------------------------------------------- expected tables

    def _rows(self, family: TableFamily, genus: int) -> Tuple[int, Dict[int, Tuple[range, Rule]]]:
        """(i, {row q: (p range, formula)}) of a family"""
        g = genus
        if family == TableFamily.CANONICAL_ODD:
            i = (g - 3) // 2
            return i, {
                1: (range(1, i + 1), lambda p, i: (2 * i + 2 - p) * (2 * i - 2 * p + 2) / Fraction(p + 1) * _c(2 * i + 2, p - 1)),
                2: (range(i + 1, 2 * i + 1), lambda p, i: (2 * i + 1 - p) * (2 * p - 2 * i) / Fraction(p + 2) * _c(2 * i + 2, p)),
            }
        if family == TableFamily.CANONICAL_EVEN:
            i = (g - 2) // 2
            return i, {
                1: (range(1, i + 1), lambda p, i: (2 * i - p + 1) * (2 * i - 2 * p + 1) / Fraction(p + 1) * _c(2 * i + 1, p - 1)),
                2: (range(i, 2 * i), lambda p, i: (2 * i - p) * (2 * p - 2 * i + 1) / Fraction(p + 2) * _c(2 * i + 1, p)),
            }
        if family == TableFamily.PARACANONICAL_ODD:
            i = (g - 5) // 2
            return i, {
                1: (range(1, i + 1), lambda p, i: p * (2 * i - 2 * p + 1) / Fraction(2 * i + 3) * _c(2 * i + 4, p + 1)),
                2: (range(i, 2 * i + 3), lambda p, i: (p + 1) * (2 * p - 2 * i + 1) / Fraction(2 * i + 3) * _c(2 * i + 4, p + 2)),
            }
        i = (g - 6) // 2
        return i, {
            1: (range(1, i + 1), lambda p, i: p * (i + 1 - p) / Fraction(i + 2) * _c(2 * i + 5, p + 1)),
            2: (range(i + 1, 2 * i + 4), lambda p, i: (p + 1) * (p - i) / Fraction(i + 2) * _c(2 * i + 5, p + 2)),
        }

    def expected_table(
        self, family: TableFamily, genus: int, p_max: Optional[int] = None, q_max: Optional[int] = None
    ) -> ExpectedTable:
        """Predicted Betti table of a general curve; zero outside each formula's range"""
        g = genus
        if g % 2 != family.parity:
            raise UsageError(f"Genus {g} has the wrong parity for {family.value}")
        if family.is_canonical and g < 3:
            raise UsageError(f"Canonical tables need g >= 3, got {g}")
        if not family.is_canonical and g < 5:
            raise UsageError(f"Paracanonical tables need g >= 5, got {g}")

        num_vars = g if family.is_canonical else g - 1
        full_p = g - 2 if family.is_canonical else g - 3
        full_q = 3 if family.is_canonical else 2
        p_max = full_p if p_max is None else p_max
        q_max = full_q if q_max is None else q_max

        i, rows = self._rows(family, g)
        entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
        terms: List[FormulaTerm] = [FormulaTerm(p=0, q=0, value=1, rule="b_{0,0} = 1")]
        if family.is_canonical:
            entries[(g - 2, 3)] = 1
            terms.append(FormulaTerm(p=g - 2, q=3, value=1, rule="b_{g-2,3} = b_{0,0}"))
        for q, (p_range, rule) in rows.items():
            for p in p_range:
                value = rule(p, i)
                if value.denominator != 1 or value < 0:
                    raise FormulaError(f"{family.value} g={g}: b_{p},{q} evaluates to {value}")
                if value:
                    entries[(p, q)] = int(value)
                    terms.append(FormulaTerm(p=p, q=q, value=int(value), rule=f"{family.value} row {q}, i={i}"))

        full = BettiDiagram.from_entries(num_vars, full_p, full_q, entries)
        if family.is_canonical:
            check = self.hilbert_identity_check(full, self.canonical_hilbert(g, full_p + full_q), complete=True)
        else:
            check = self.diagonal_identity_check(full, 2 * g - 2, g)
        if not check.passed:
            raise FormulaError(f"{family.value} g={g} fails its own Hilbert identity: {check.message}")

        clipped = {pq: v for pq, v in entries.items() if pq[0] <= p_max and pq[1] <= q_max}
        diagram = BettiDiagram.from_entries(num_vars, p_max, q_max, clipped)
        return ExpectedTable(family=family, genus=g, degree=2 * g - 2, diagram=diagram, terms=terms)

    def canonical_hilbert(self, genus: int, top: int) -> List[int]:
        """h(0) = 1, h(1) = g, h(q) = (2q-1)(g-1)"""
        return [1 if q == 0 else genus if q == 1 else (2 * q - 1) * (genus - 1) for q in range(top + 1)]

    def nonspecial_hilbert(self, degree: int, genus: int, top: int) -> List[int]:
        return [1] + [q * degree - genus + 1 for q in range(1, top + 1)]

    # ------------------------------------------------------------ shapes

    def is_natural(self, diagram: BettiDiagram) -> PredicateResult:
        """b_{p,2} * b_{p+1,1} = 0 for every p in the window"""
        name = "natural"
        if diagram.q_max < 2 or diagram.p_max < 1:
            return _result(name, PredicateStatus.UNDECIDABLE, "Window does not contain rows 1 and 2")
        for p in range(diagram.p_max):
            if diagram.get(p, 2) and diagram.get(p + 1, 1):
                return _result(
                    name,
                    PredicateStatus.FAIL,
                    f"b_{p},2 = {diagram.get(p, 2)} and b_{p + 1},1 = {diagram.get(p + 1, 1)}",
                    witness=(p, 2),
                )
        return _result(name, PredicateStatus.PASS, f"natural for p < {diagram.p_max}")

    def purity_defects(self, diagram: BettiDiagram) -> List[int]:
        """Columns p >= 1 with both b_{p,1} and b_{p,2} nonzero"""
        if diagram.q_max < 2:
            return []
        return [p for p in range(1, diagram.p_max + 1) if diagram.get(p, 1) and diagram.get(p, 2)]

    def two_row_check(self, diagram: BettiDiagram) -> PredicateResult:
        """b_{0,q} = 0 for q >= 1 and b_{p,q} = 0 for q >= 3"""
        name = "two-row"
        for q in range(1, diagram.q_max + 1):
            if diagram.get(0, q):
                return _result(name, PredicateStatus.FAIL, f"b_0,{q} = {diagram.get(0, q)}", witness=(0, q))
        for p, q, b in diagram.entries():
            if q >= 3 and b:
                return _result(name, PredicateStatus.FAIL, f"b_{p},{q} = {b}", witness=(p, q))
        if diagram.q_max < 3:
            return _result(name, PredicateStatus.UNDECIDABLE, "Window has no row q = 3")
        return _result(name, PredicateStatus.PASS, "rows q >= 3 vanish in the window")

    # --------------------------------------------------------- conjectures

    def green_predicate(
        self, diagram: BettiDiagram, cliff: int, audit: Optional[NormalityAudit] = None
    ) -> PredicateResult:
        """K_{p,2} = 0 exactly for p < Cliff, over the window"""
        name = "green"
        g = diagram.num_vars
        if cliff < 1:
            return _result(name, PredicateStatus.UNSUPPORTED, "Clifford index 0: the canonical map is not an embedding")
        if audit is not None and not audit.passed:
            return _result(name, PredicateStatus.UNSUPPORTED, "Model is not projectively normal")
        if diagram.q_max < 2 or diagram.p_max < cliff:
            return _result(name, PredicateStatus.UNDECIDABLE, f"Window p <= {diagram.p_max} does not reach Cliff = {cliff}")
        for p in range(cliff):
            if diagram.get(p, 2):
                return _result(name, PredicateStatus.FAIL, f"b_{p},2 = {diagram.get(p, 2)} for p < Cliff", witness=(p, 2))
        for p in range(cliff, min(g - 3, diagram.p_max) + 1):
            if not diagram.get(p, 2):
                return _result(name, PredicateStatus.FAIL, f"b_{p},2 = 0 for Cliff <= p <= g-3", witness=(p, 2))
        return _result(
            name,
            PredicateStatus.PASS,
            f"K_p,2 vanishes exactly for p < {cliff}",
            cliff=cliff,
        )

    def np_property(self, diagram: BettiDiagram, audit: NormalityAudit, p: int) -> PredicateResult:
        """Projective normality and b_{j,q} = 0 for j <= p, q >= 2"""
        name = f"N_{p}"
        if not audit.passed:
            failure = audit.first_failure()
            return _result(
                name,
                PredicateStatus.FAIL,
                f"Not projectively normal: degree {failure.degree} piece {failure.dimension} < {failure.expected}",
            )
        if diagram.q_max < 2 or diagram.p_max < p:
            return _result(name, PredicateStatus.UNDECIDABLE, f"Window does not cover p <= {p}, q >= 2")
        for j in range(p + 1):
            for q in range(2, diagram.q_max + 1):
                if diagram.get(j, q):
                    return _result(name, PredicateStatus.FAIL, f"b_{j},{q} = {diagram.get(j, q)}", witness=(j, q))
        return _result(name, PredicateStatus.PASS, f"(N_{p}) holds in the window")

    def duality_check(self, diagram: BettiDiagram, genus: int) -> PredicateResult:
        """b_{p,q} = b_{g-2-p,3-q} on every mirrored pair inside the window"""
        name = "duality"
        pairs = 0
        for p, q, b in diagram.entries():
            mirror = diagram.get(genus - 2 - p, 3 - q)
            if mirror is None or genus - 2 - p < 0 or 3 - q < 0:
                continue
            pairs += 1
            if b != mirror:
                return _result(
                    name,
                    PredicateStatus.FAIL,
                    f"b_{p},{q} = {b} but b_{genus - 2 - p},{3 - q} = {mirror}",
                    witness=(p, q),
                )
        if not pairs:
            return _result(name, PredicateStatus.UNDECIDABLE, "No mirrored pair inside the window")
        return _result(name, PredicateStatus.PASS, f"{pairs} mirrored entries agree")

    def diagonal_value(self, p: int, degree: int, genus: int) -> Fraction:
        """(p+1) C(d-g, p+1) ((d+1-g)/(p+2) - d/(d-g))"""
        d, g = degree, genus
        if d <= g:
            raise UsageError(f"The diagonal identity needs d > g, got d={d}, g={g}")
        return (p + 1) * _c(d - g, p + 1) * (Fraction(d + 1 - g, p + 2) - Fraction(d, d - g))

    def diagonal_identity_check(self, diagram: BettiDiagram, degree: int, genus: int) -> PredicateResult:
        """b_{p+1,1} - b_{p,2} against its closed value for a nonspecial embedding"""
        name = "diagonal"
        if diagram.q_max < 2 or diagram.p_max < 1:
            return _result(name, PredicateStatus.UNDECIDABLE, "Window does not contain rows 1 and 2")
        for p in range(diagram.p_max):
            expected = self.diagonal_value(p, degree, genus)
            actual = diagram.get(p + 1, 1) - diagram.get(p, 2)
            if actual != expected:
                return _result(
                    name,
                    PredicateStatus.FAIL,
                    f"b_{p + 1},1 - b_{p},2 = {actual}, expected {expected}",
                    witness=(p, 2),
                )
        return _result(name, PredicateStatus.PASS, f"identity holds for p < {diagram.p_max}")

    def hilbert_identity_check(self, diagram: BettiDiagram, hilbert: Sequence[int], complete: bool = False) -> PredicateResult:
        """
        Alternating diagonal sums of the diagram against the recursion on the
        Hilbert function. With complete=True, entries outside the window
        count as zero.
        """
        name = "hilbert"
        if complete:
            top = min(diagram.p_max + diagram.q_max, len(hilbert) - 1)
        else:
            top = min(diagram.p_max, diagram.q_max, len(hilbert) - 1)
        expected = koszul_service.diagonal_sums(list(hilbert), diagram.r, top)
        for k in range(top + 1):
            actual = sum((-1) ** p * (diagram.get(p, k - p) or 0) for p in range(k + 1))
            if actual != expected[k]:
                return _result(
                    name,
                    PredicateStatus.FAIL,
                    f"diagonal {k}: alternating sum {actual}, Hilbert recursion {expected[k]}",
                    witness=(k, 0),
                )
        return _result(name, PredicateStatus.PASS, f"diagonals 0..{top} agree")

    def prym_green_check(
        self, diagram: BettiDiagram, genus: int, ring: Optional[CoordinateRing] = None
    ) -> PredicateResult:
        """A paracanonical diagram against the expected natural table of its genus"""
        name = "prym-green"
        g = genus
        family = TableFamily.PARACANONICAL_ODD if g % 2 else TableFamily.PARACANONICAL_EVEN
        expected = self.expected_table(family, g).diagram
        details: Dict[str, object] = {}
        if ring is not None and g == 6:
            details["sym2_rank"] = ring.module.dim(2)
            details["sym2_dim"] = binomial(ring.module.ring.num_vars + 1, 2)
        compared = 0
        for p, q, b in diagram.entries():
            predicted = expected.get(p, q)
            if predicted is None:
                continue
            compared += 1
            if b != predicted:
                return _result(
                    name,
                    PredicateStatus.FAIL,
                    f"b_{p},{q} = {b}, the general level-curve table has {predicted}",
                    witness=(p, q),
                    computed=b,
                    expected=predicted,
                    **details,
                )
        if not compared or diagram.q_max < 2:
            return _result(name, PredicateStatus.UNDECIDABLE, "Window does not reach the quadratic strand", **details)
        natural = self.is_natural(diagram)
        if natural.status == PredicateStatus.FAIL:
            return _result(name, PredicateStatus.FAIL, natural.message, witness=natural.witness, **details)
        return _result(name, PredicateStatus.PASS, f"matches the expected table at {compared} entries", **details)


conjecture_service = ConjectureService()
