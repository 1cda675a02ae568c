"""measure: run one registered measure experiment."""

import argparse
import logging
from typing import Dict, List

from farey_flow.commands.output import Emitter
from farey_flow.errors import ValueParseError
from farey_flow.models import CommandSpec
from farey_flow.services.experiment_factory import ExperimentFactory

logger = logging.getLogger(__name__)


def register(subparsers: argparse._SubParsersAction, common: argparse.ArgumentParser) -> None:
    parser = subparsers.add_parser(
        "measure", parents=[common], help="Numerical experiments on invariant measures"
    )
    parser.add_argument(
        "--experiment",
        required=True,
        help=f"One of: {', '.join(ExperimentFactory.get_supported_experiments())}",
    )
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override an experiment parameter (repeatable)",
    )
    parser.set_defaults(handler=run)


def parse_params(items: List[str]) -> Dict[str, str]:
    params = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ValueParseError(f"Parameter must look like key=value, got '{item}'")
        params[key.strip().replace("-", "_")] = value.strip()
    return params


def run(spec: CommandSpec, emitter: Emitter) -> int:
    experiment = ExperimentFactory.get_experiment(spec.options["experiment"])
    overrides = parse_params(spec.options["param"])
    if "seed" in experiment.default_params and "seed" not in overrides:
        overrides["seed"] = spec.seed
    report = experiment.run(**overrides)

    if emitter.is_json:
        emitter.raw(report.to_json())
    else:
        emitter.text(f"{report.name}: {'pass' if report.passed else 'FAIL'}")
        for key, value in report.params.items():
            emitter.text(f"  param {key} = {value}")
        for key, value in report.stats.items():
            emitter.text(f"  {key} = {value}")
    if not report.passed:
        logger.warning(f"Experiment {report.name} did not meet its tolerance")
    return 0
