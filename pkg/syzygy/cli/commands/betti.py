"""
betti: compute and print the Betti diagram of a model
"""
import argparse
import logging

from syzygy.cli.deps import CommandResult, add_common_flags, add_model_flags, build_report, compute, json_payload, render_report

logger = logging.getLogger(__name__)


def register(parser: argparse.ArgumentParser) -> None:
    add_model_flags(parser, default_model="rational-nodal")
    add_common_flags(parser)


def run(args: argparse.Namespace) -> CommandResult:
    context, diagram, reports = compute(args)
    report = build_report("betti", args, context, diagram, reports)
    logger.info(f"Betti diagram of {context.name} over F_{context.field.p} done")
    return CommandResult(payload=json_payload(report, args), text=render_report(report, diagram))
