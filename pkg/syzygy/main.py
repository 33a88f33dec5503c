# Import logging configuration first
import logging_config

import argparse
import logging
import sys
from typing import List, Optional

from syzygy.cli.router import cli_router
from syzygy.core.config import settings
from syzygy.core.errors import EXIT_USAGE, SyzygyError
from syzygy.utils.response import error_response, success_response

logger = logging.getLogger(__name__)


def create_application() -> argparse.ArgumentParser:
    """Create and configure the command line parser"""
    return cli_router.build_parser(
        prog=settings.app_name,
        description="Koszul cohomology and Betti diagrams of curve models over prime fields",
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = create_application()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging_config.setup_logging(level)

    try:
        result = args.handler(args)
    except SyzygyError as e:
        logger.error(f"{type(e).__name__}: {e.detail}")
        return error_response(e.detail, e.exit_code, e.details)
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}")
        return error_response(str(e), EXIT_USAGE)

    success_response(result.payload, result.text, args.output_format, getattr(args, "out", None))
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
