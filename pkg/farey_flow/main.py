"""Command line entry point: ``farey-flow <command> [options]``."""

import argparse
import logging
import re
import sys
from typing import List, Optional

from pydantic import ValidationError

from farey_flow import __version__
from farey_flow.arith.precision import precision
from farey_flow.commands import closed, code, draw, expand, measure, section
from farey_flow.commands.output import Emitter
from farey_flow.config import settings
from farey_flow.errors import FareyFlowError
from farey_flow.models import CommandSpec, OutputFormat

logger = logging.getLogger(__name__)

COMMANDS = (expand, code, section, closed, measure, draw)
GLOBAL_OPTIONS = ("command", "handler", "format", "seed", "precision", "out")

# Values such as -1/2, -sqrt(2) or -2:3 are arguments, not options.
VALUE_LIKE = re.compile(r"^-(?:\d|\.\d|sqrt\().*$")


class ValueArgumentParser(argparse.ArgumentParser):
    """Argument parser that accepts negative exact values after an option."""

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = VALUE_LIKE


def build_parser() -> argparse.ArgumentParser:
    common = ValueArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.TEXT.value,
        help="Output format (default: text)",
    )
    common.add_argument(
        "--seed", type=int, default=settings.SEED, help=f"Random seed (default: {settings.SEED})"
    )
    common.add_argument(
        "--precision",
        type=int,
        default=settings.PRECISION,
        help=f"Working precision in bits (default: {settings.PRECISION})",
    )
    common.add_argument("--out", help="Write output to this file instead of standard output")

    parser = ValueArgumentParser(
        prog="farey-flow",
        description="Geodesic flow on the modular surface through the Farey tessellation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=settings.LOG_LEVEL, stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    values = vars(args)
    try:
        spec = CommandSpec(
            command=args.command,
            format=args.format,
            seed=args.seed,
            precision=args.precision,
            out=args.out,
            options={k: v for k, v in values.items() if k not in GLOBAL_OPTIONS},
        )
    except ValidationError as e:
        logger.error(f"Invalid options: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 2

    emitter = Emitter(spec)
    try:
        with precision(spec.precision):
            status = args.handler(spec, emitter)
        emitter.flush()
        return status
    except FareyFlowError as e:
        logger.debug(f"{spec.command} failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        logger.error(f"I/O failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
