"""closed: one closed geodesic from its digit period, or a census up to a length."""

import argparse
import logging

from farey_flow.arith.parsing import format_value, parse_word
from farey_flow.commands.output import Emitter, number_text
from farey_flow.models import CommandSpec, OutputRecord
from farey_flow.services.measures import closed_geodesic_census
from farey_flow.services.section import closed_geodesic_from_period, closed_word, trace_length

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "closed", parents=[common], help="Closed geodesics on the modular surface"
    )
    target = parser.add_mutually_exclusive_group(required=True)
    target.add_argument("--word", help="Digit period, e.g. '2,1' (odd words are doubled)")
    target.add_argument(
        "--max-length", type=float, help="List every closed geodesic up to this length"
    )
    parser.set_defaults(handler=run)


def run(spec: CommandSpec, emitter: Emitter) -> int:
    if spec.options.get("max_length") is not None:
        report = closed_geodesic_census(spec.options["max_length"])
        if emitter.is_json:
            emitter.raw(report.to_json())
        else:
            for row in report.stats["classes"]:
                word = ",".join(str(d) for d in row["word"])
                emitter.text(f"({word})  length {number_text(row['length'])}")
            emitter.text(f"count {report.stats['count']}")
        return 0

    word = closed_word(parse_word(spec.options["word"]))
    orbit, length = closed_geodesic_from_period(word)
    by_trace = trace_length(word)
    for index, point in enumerate(orbit, start=1):
        emitter.record(
            OutputRecord(
                kind="orbit",
                index=index,
                parity=point.parity,
                past=format_value(point.representative.past),
                future=format_value(point.representative.future),
            ),
            text=(
                f"{index}: ({format_value(point.representative.past)}, "
                f"{format_value(point.representative.future)}) ; {point.parity}"
            ),
        )
    emitter.record(
        OutputRecord(
            kind="length",
            return_time=float(length),
            extra={"word": list(word), "trace_length": float(by_trace)},
        ),
        text=f"length {number_text(length)} (trace {number_text(by_trace)})",
    )
    logger.info(f"Closed geodesic {word}: {number_text(length)}")
    return 0
