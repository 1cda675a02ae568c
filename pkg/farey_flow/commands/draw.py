"""draw: SVG picture of the Farey tessellation with an optional geodesic."""

import argparse
import logging
import sys

from farey_flow.arith.parsing import parse_pair
from farey_flow.commands.output import Emitter
from farey_flow.models import CommandSpec
from farey_flow.services.hyperbolic import Geodesic
from farey_flow.services.svg_renderer import default_viewport, render

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "draw", parents=[common], help="Draw the tessellation as SVG"
    )
    parser.add_argument("--depth", type=int, default=3, help="Stern-Brocot depth (default: 3)")
    parser.add_argument("--window", help="Horizontal window 'a:b' (default from settings)")
    parser.add_argument("--top", type=float, help="Height of the window (default from settings)")
    parser.add_argument("--geodesic", help="Geodesic feet 'past,future' in the exact grammar")
    parser.add_argument("--ford", action="store_true", help="Draw Ford circles")
    parser.add_argument(
        "--show-return", action="store_true", help="Draw one first return of the geodesic"
    )
    parser.set_defaults(handler=run)


def run(spec: CommandSpec, emitter: Emitter) -> int:
    view = default_viewport(spec.options.get("window"), spec.options.get("top"))
    geodesic = None
    if spec.options.get("geodesic"):
        geodesic = Geodesic(*parse_pair(spec.options["geodesic"]))
    document, edge_count = render(
        spec.options["depth"],
        view,
        geodesic=geodesic,
        ford=spec.options["ford"],
        show_return=spec.options["show_return"],
    )
    emitter.raw(document.decode("utf-8").rstrip("\n"))
    print(f"edges: {edge_count}", file=sys.stderr)
    return 0
