"""expand: continued fraction digits, convergents and mediants of a value."""

import argparse
import logging

from farey_flow.arith.parsing import format_value, parse_value
from farey_flow.commands.output import Emitter
from farey_flow.models import CommandSpec, OutputRecord
from farey_flow.services.continued_fraction import (
    convergents,
    expand,
    format_cf,
    format_terms,
    mediant_convergents,
)

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "expand", parents=[common], help="Expand a value as a regular continued fraction"
    )
    parser.add_argument("--value", required=True, help="Value in the exact grammar")
    parser.add_argument("--digits", type=int, default=10, help="Terms to print (default: 10)")
    parser.add_argument("--convergents", action="store_true", help="Also print convergents")
    parser.add_argument("--mediants", action="store_true", help="Also print mediant convergents")
    parser.set_defaults(handler=run)


def run(spec: CommandSpec, emitter: Emitter) -> int:
    value = parse_value(spec.options["value"])
    cf = expand(value)
    count = spec.options["digits"]
    available = len(cf.preperiod) + 1 if cf.is_finite else count
    terms = cf.terms(min(count, available))
    truncated = not cf.is_finite or available > count

    for index, digit in enumerate(terms):
        emitter.record(OutputRecord(kind="digit", index=index, digit=digit))
    emitter.record(
        OutputRecord(
            kind="expansion",
            value=format_value(value),
            extra={"kind": cf.kind, "notation": format_cf(cf), "truncated": truncated},
        ),
        text=format_terms(terms, truncated),
    )
    emitter.text(f"{cf.kind}: {format_cf(cf)}")

    if spec.options["convergents"]:
        for c in convergents(cf, len(terms)):
            fraction = f"{c.p}/{c.q}"
            emitter.record(
                OutputRecord(kind="convergent", index=c.index, value=fraction),
                text=f"p{c.index}/q{c.index} = {fraction}",
            )
    if spec.options["mediants"]:
        for m in mediant_convergents(cf, len(terms)):
            fraction = format_value(m.value)
            emitter.record(
                OutputRecord(kind="mediant", index=m.level, digit=m.a, value=fraction),
                text=f"mediant level {m.level}, a = {m.a}: {fraction}",
            )
    logger.info(f"Expanded {format_value(value)}: {format_cf(cf)}")
    return 0
