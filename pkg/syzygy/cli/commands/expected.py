"""
expected: print the predicted Betti table of a general curve
"""
import argparse

from syzygy.cli.deps import CommandResult
from syzygy.schemas.betti import TableFamily
from syzygy.services.conjecture_service import conjecture_service


def register(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", choices=[family.value for family in TableFamily], required=True)
    parser.add_argument("--genus", type=int, required=True)
    parser.add_argument("--pmax", type=int, default=None)
    parser.add_argument("--qmax", type=int, default=None)
    parser.add_argument("--format", dest="output_format", choices=("table", "json", "both"), default="table")
    parser.add_argument("--out", default=None)
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")


def run(args: argparse.Namespace) -> CommandResult:
    table = conjecture_service.expected_table(TableFamily(args.family), args.genus, args.pmax, args.qmax)
    diagram = table.diagram
    payload = {
        "command": "expected",
        "family": table.family.value,
        "genus": table.genus,
        "degree": table.degree,
        "ring_vars": diagram.num_vars,
        "window": {"p_max": diagram.p_max, "q_max": diagram.q_max},
        "betti": [[p, q, b] for p, q, b in diagram.entries()],
        "terms": [term.model_dump() for term in table.terms],
    }
    lines = [f"{table.family.value}, g={table.genus}, degree {table.degree} in P^{diagram.r}", "", diagram.render(), ""]
    lines += [f"b_{term.p},{term.q} = {term.value}  ({term.rule})" for term in table.terms]
    return CommandResult(payload=payload, text="\n".join(lines))
