"""section: trajectory of the first-return map on decorated digit sequences."""

import argparse
import logging

import mpmath

from farey_flow.arith.parsing import format_value, parse_word
from farey_flow.commands.output import Emitter, number_text
from farey_flow.errors import ValueParseError
from farey_flow.models import CommandSpec, OutputRecord
from farey_flow.services.section import (
    closed_geodesic_from_period,
    decode,
    factor_to_unit_interval,
    first_return,
    format_sigma,
    parse_sigma,
    periodic_element,
    shift,
)

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "section", parents=[common], help="Iterate the first-return map from a periodic sequence"
    )
    start = parser.add_mutually_exclusive_group(required=True)
    start.add_argument("--periodic", help="Two-sided periodic digit word, e.g. '2,1'")
    start.add_argument("--sigma", help="Decorated sequence, e.g. '[(1 2) | (2 1)] ; 0'")
    parser.add_argument(
        "--parity", type=int, choices=(0, 1), default=0, help="Parity w (default: 0)"
    )
    parser.add_argument("--steps", type=int, default=4, help="Returns to compute (default: 4)")
    parser.add_argument(
        "--closed", action="store_true", help="Report the closed geodesic length of the word"
    )
    parser.set_defaults(handler=run)


def run(spec: CommandSpec, emitter: Emitter) -> int:
    word = None
    if spec.options.get("sigma"):
        s = parse_sigma(spec.options["sigma"])
    else:
        word = parse_word(spec.options["periodic"])
        s = periodic_element(word, spec.options["parity"])
    point = decode(s)
    total = mpmath.mpf(0)

    for index in range(1, spec.options["steps"] + 1):
        factor = factor_to_unit_interval(s)
        image, step = first_return(point)
        total += step.time
        emitter.record(
            OutputRecord(
                kind="return",
                index=index,
                digit=step.digit_consumed,
                parity=s.parity,
                return_time=float(step.time),
                past=format_value(point.representative.past),
                future=format_value(point.representative.future),
                value=format_value(factor),
                extra={"sigma": format_sigma(s), "matrix": [list(r) for r in step.matrix.rows()]},
            ),
            text=(
                f"{index}: {format_sigma(s)}  feet ({format_value(point.representative.past)}, "
                f"{format_value(point.representative.future)})  time {number_text(step.time)}  "
                f"factor {format_value(factor)}"
            ),
        )
        s, point = shift(s), image

    emitter.record(
        OutputRecord(kind="total", return_time=float(total)),
        text=f"total time {number_text(total)}",
    )

    if spec.options["closed"]:
        if word is None:
            raise ValueParseError("--closed needs --periodic")
        orbit, length = closed_geodesic_from_period(word)
        emitter.record(
            OutputRecord(kind="closed", return_time=float(length), extra={"returns": len(orbit)}),
            text=f"closed geodesic length {number_text(length)} over {len(orbit)} returns",
        )
    logger.info(f"Section trajectory of {spec.options['steps']} steps done")
    return 0
