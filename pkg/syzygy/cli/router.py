import argparse
from dataclasses import dataclass
from types import ModuleType
from typing import List

from syzygy.cli.commands import betti, check, expected, witness


@dataclass(frozen=True)
class CommandRoute:
    name: str
    module: ModuleType
    help: str


class CommandRouter:
    """Collects command modules, each exposing register(parser) and run(args)"""

    def __init__(self):
        self.routes: List[CommandRoute] = []

    def include_command(self, module: ModuleType, name: str, help: str) -> None:
        self.routes.append(CommandRoute(name=name, module=module, help=help))

    def build_parser(self, prog: str, description: str) -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog=prog, description=description)
        subparsers = parser.add_subparsers(dest="command", required=True)
        for route in self.routes:
            sub = subparsers.add_parser(route.name, help=route.help, description=route.help)
            route.module.register(sub)
            sub.set_defaults(handler=route.module.run)
        return parser


cli_router = CommandRouter()

# Include all commands
cli_router.include_command(betti, name="betti", help="Compute the Betti diagram of a model")
cli_router.include_command(check, name="check", help="Evaluate a syzygy predicate on a computed diagram")
cli_router.include_command(expected, name="expected", help="Print the expected Betti table of a general curve")
cli_router.include_command(witness, name="witness", help="Certify an explicit Green-Lazarsfeld syzygy")
