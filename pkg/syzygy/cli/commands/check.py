"""
check: evaluate a syzygy predicate on a computed diagram
"""
import argparse
import logging
from typing import List

from syzygy.cli.deps import (
    CommandResult,
    ModelContext,
    add_common_flags,
    add_model_flags,
    build_report,
    compute,
    default_cliff,
    json_payload,
    render_report,
)
from syzygy.core.errors import EXIT_OK, EXIT_PREDICATE_FAILED, EXIT_USAGE, UndecidableError, UsageError
from syzygy.schemas.betti import BettiDiagram
from syzygy.schemas.curve import BundleKind
from syzygy.schemas.report import PredicateResult, PredicateStatus
from syzygy.services.conjecture_service import conjecture_service
from syzygy.services.koszul_service import koszul_service

logger = logging.getLogger(__name__)

PREDICATES = ("green", "prym-green", "natural", "np", "duality", "diagonal", "two-row", "hilbert")

DEFAULT_BUNDLE = {
    "prym-green": BundleKind.PARACANONICAL,
    "np": BundleKind.TWIST,
    "two-row": BundleKind.TWIST,
    "diagonal": BundleKind.TWIST,
}

CANONICAL_KINDS = (BundleKind.CANONICAL, BundleKind.ADJOINT_CANONICAL)


def register(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("predicate", choices=PREDICATES)
    add_model_flags(parser, default_model="rational-nodal")
    add_common_flags(parser)
    parser.add_argument("--cliff", type=int, default=None, help="Clifford index of the model (green)")
    parser.add_argument("--np", dest="np_index", type=int, default=1, help="p of property (N_p)")


def exit_code(statuses: List[PredicateStatus]) -> int:
    if PredicateStatus.FAIL in statuses:
        return EXIT_PREDICATE_FAILED
    if PredicateStatus.UNSUPPORTED in statuses:
        return EXIT_USAGE
    return EXIT_OK


def evaluate(args: argparse.Namespace, context: ModelContext, diagram: BettiDiagram) -> List[PredicateResult]:
    predicate = args.predicate
    kind = context.kind
    audit = context.ring.audit if context.ring is not None else None

    if predicate == "green":
        if kind not in CANONICAL_KINDS:
            raise UsageError("green needs a canonical model")
        cliff = args.cliff if args.cliff is not None else default_cliff(context)
        return [conjecture_service.green_predicate(diagram, cliff, audit)]
    if predicate == "prym-green":
        if kind != BundleKind.PARACANONICAL:
            raise UsageError("prym-green needs --bundle paracanonical")
        return [conjecture_service.prym_green_check(diagram, context.genus, context.ring)]
    if predicate == "natural":
        return [conjecture_service.is_natural(diagram)]
    if predicate == "np":
        if audit is None:
            raise UsageError("np needs a curve model with a normality audit")
        return [conjecture_service.np_property(diagram, audit, args.np_index)]
    if predicate == "duality":
        if kind not in CANONICAL_KINDS:
            raise UsageError("duality needs a canonical model")
        return [conjecture_service.duality_check(diagram, context.genus)]
    if predicate == "diagonal":
        if kind in CANONICAL_KINDS or context.degree is None:
            raise UsageError("The diagonal identity needs a nonspecial embedding")
        return [conjecture_service.diagonal_identity_check(diagram, context.degree, context.genus)]
    if predicate == "two-row":
        return [conjecture_service.two_row_check(diagram)]

    results = [conjecture_service.hilbert_identity_check(diagram, context.module.hilbert_values())]
    mismatches = koszul_service.hilbert_consistency(diagram, context.module)
    if mismatches:
        results.append(
            PredicateResult(
                name="hilbert-consistency",
                status=PredicateStatus.FAIL,
                witness=(mismatches[0], 0),
                message=f"Hilbert function read off the diagram differs in degrees {mismatches}",
            )
        )
    return results


def run(args: argparse.Namespace) -> CommandResult:
    if args.model == "rational-nodal" and args.bundle is None:
        args.bundle = DEFAULT_BUNDLE.get(args.predicate, BundleKind.CANONICAL).value
    context, diagram, reports = compute(args)
    results = evaluate(args, context, diagram)
    predicates = {result.name: result.model_dump(mode="json") for result in results}
    report = build_report(f"check {args.predicate}", args, context, diagram, reports, predicates)
    for result in results:
        logger.info(f"{result.name}: {result.status.value} {result.message}")
    code = exit_code(report.exit_status)
    undecided = [result.name for result in results if result.status == PredicateStatus.UNDECIDABLE]
    if undecided and code == EXIT_OK:
        raise UndecidableError(
            f"{', '.join(undecided)} undecidable in window p <= {diagram.p_max}, q <= {diagram.q_max}",
            details=json_payload(report, args),
        )
    return CommandResult(payload=json_payload(report, args), text=render_report(report, diagram), exit_code=code)
