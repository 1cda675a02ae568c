"""code: L/R cutting sequence, runs and tips of a geodesic."""

import argparse
import logging

from farey_flow.arith.parsing import format_value, parse_value
from farey_flow.commands.output import Emitter
from farey_flow.models import CommandSpec, OutputRecord
from farey_flow.services.farey_coding import (
    backward_cutting_sequence,
    cutting_sequence,
    format_letters,
    is_in_A,
    reduce_to_A,
    runs,
    tips,
)
from farey_flow.services.hyperbolic import Geodesic

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "code",
        parents=[common],
        help="Cutting sequence of a geodesic against the Farey tessellation",
    )
    parser.add_argument("--past", required=True, help="Past foot in the exact grammar")
    parser.add_argument("--future", required=True, help="Future foot in the exact grammar")
    parser.add_argument("--letters", type=int, default=20, help="Letters to print (default: 20)")
    parser.add_argument("--tips", type=int, default=0, help="Tips to print (default: 0)")
    parser.add_argument(
        "--backward", action="store_true", help="Also print the letters towards the past foot"
    )
    parser.add_argument(
        "--reduce", action="store_true", help="Move the geodesic into A first and report the matrix"
    )
    parser.set_defaults(handler=run)


def run(spec: CommandSpec, emitter: Emitter) -> int:
    g = Geodesic(parse_value(spec.options["past"]), parse_value(spec.options["future"]))

    if spec.options["reduce"] and not is_in_A(g):
        g, m = reduce_to_A(g)
        emitter.record(
            OutputRecord(
                kind="reduction",
                past=format_value(g.past),
                future=format_value(g.future),
                extra={"matrix": [list(row) for row in m.rows()]},
            ),
            text=f"reduced: ({format_value(g.past)}, {format_value(g.future)}) by {m}",
        )

    letters = cutting_sequence(g, spec.options["letters"])
    for index, letter in enumerate(letters, start=1):
        emitter.record(OutputRecord(kind="letter", index=index, letter=letter.value))
    sequence = runs(letters)
    emitter.text(format_letters(letters))
    emitter.record(
        OutputRecord(
            kind="runs",
            letter=sequence.first_letter.value,
            extra={"runs": list(sequence.runs), "terminal": sequence.terminal},
        ),
        text=f"runs {sequence}",
    )

    if spec.options["backward"]:
        backward = backward_cutting_sequence(g, spec.options["letters"])
        for index, letter in enumerate(backward):
            emitter.record(OutputRecord(kind="backward-letter", index=-index, letter=letter.value))
        emitter.text(f"backward {format_letters(backward)} runs {runs(backward)}")

    if spec.options["tips"] > 0:
        found = tips(g, spec.options["tips"])
        for index, tip in enumerate(found, start=1):
            emitter.record(
                OutputRecord(
                    kind="tip",
                    index=index,
                    value=format_value(tip.vertex),
                    letter=tip.side.value,
                    extra={"order": tip.order, "terminal": tip.terminal},
                )
            )
        emitter.text(
            "tips "
            + " ".join(
                f"{format_value(t.vertex)}^{t.order}{' (terminal)' if t.terminal else ''}"
                for t in found
            )
        )
    logger.info(f"Coded geodesic {g}: {format_letters(letters)}")
    return 0
