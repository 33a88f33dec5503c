"""
witness: certify an explicit linear syzygy coming from L = L_1 (x) L_2,
on P^1 (p1-split) or on a g-nodal rational curve (nodal-split)
"""
import argparse
import logging

from syzygy.cli.deps import CommandResult, add_common_flags, build_model
from syzygy.core.errors import UsageError
from syzygy.services.koszul_service import koszul_service
from syzygy.services.witness_service import witness_service

logger = logging.getLogger(__name__)


def register(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", choices=("p1-split", "nodal-split"), default="p1-split")
    parser.add_argument("--genus", type=int, default=None, help="Number of nodes (nodal-split)")
    parser.add_argument("--d1", type=int, required=True, help="Degree of L_1")
    parser.add_argument("--d2", type=int, required=True, help="Degree of L_2")
    add_common_flags(parser)


def run(args: argparse.Namespace) -> CommandResult:
    # The cocycle test maps into M_2
    context = build_model(args, max_degree=2)
    if context.factors is None:
        raise UsageError(f"Model {args.model} does not carry a splitting L = L_1 (x) L_2")
    first, second = context.factors
    witness = witness_service.gl_witness(context.ring, first, second)
    betti = koszul_service.koszul_dim(context.module, witness.p, 1)

    summary = {
        "p": witness.p,
        "r1": witness.r1,
        "r2": witness.r2,
        "cocycle": witness.cocycle,
        "coboundary": witness.coboundary,
        "nonzero_terms": len(witness.coordinates),
        "betti_p1": betti,
    }
    if witness.p == 1:
        summary["quadric_rank"] = witness_service.quadric_rank(witness, context.field.p)

    payload = {
        "command": "witness",
        "model": context.descriptor,
        "prime": context.field.p,
        "seed": args.seed,
        "ring_vars": context.module.ring.num_vars,
        "witness": summary,
    }
    lines = [
        f"L = L_1 (x) L_2 of degrees {args.d1} + {args.d2} on genus {context.genus}, r1={witness.r1}, r2={witness.r2}",
        f"witness in K_{witness.p},1 with {len(witness.coordinates)} nonzero coordinates",
        f"cocycle: {'yes' if witness.cocycle else 'no'}",
        f"coboundary: {'yes' if witness.coboundary else 'no'}",
        f"b_{witness.p},1 >= 1 (computed: {betti})",
    ]
    if "quadric_rank" in summary:
        lines.append(f"quadric rank: {summary['quadric_rank']}")
    logger.info(f"Witness certified in K_{witness.p},1")
    return CommandResult(payload=payload, text="\n".join(lines))
