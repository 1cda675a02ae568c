"""Concrete measure experiments."""

import logging
from fractions import Fraction
from typing import Any, Dict

import numpy as np

from farey_flow.config import settings
from farey_flow.errors import DomainError
from farey_flow.models import ExperimentReport
from farey_flow.services import measures
from farey_flow.services.base_experiment import BaseExperiment
from farey_flow.services.measures import DensityGrid, DensityTag

logger = logging.getLogger(__name__)


class DigitsExperiment(BaseExperiment):
    @property
    def name(self) -> str:
        return "digits"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"samples": 100_000, "seed": settings.SEED, "max_digit": 10}

    def compute(self, **params: Any) -> ExperimentReport:
        return measures.digit_statistics(
            params["samples"], params["seed"], max_digit=params["max_digit"]
        )


class EquidistributionExperiment(BaseExperiment):
    @property
    def name(self) -> str:
        return "equidistribution"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"height_bound": 4, "max_period": 4}

    def compute(self, **params: Any) -> ExperimentReport:
        return measures.quadratic_equidistribution(params["height_bound"], params["max_period"])


class CensusExperiment(BaseExperiment):
    @property
    def name(self) -> str:
        return "census"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"max_length": 2.7}

    def compute(self, **params: Any) -> ExperimentReport:
        return measures.closed_geodesic_census(params["max_length"])


class GaussTransferExperiment(BaseExperiment):
    """Truncated transfer operator against the Gauss density, plus the exact telescope."""

    @property
    def name(self) -> str:
        return "gauss-transfer"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"branches": 10_000, "grid": 1000, "tolerance": 2e-4, "exact_points": 20}

    def compute(self, **params: Any) -> ExperimentReport:
        branches, size = params["branches"], params["grid"]
        if size < 2:
            raise DomainError(f"Grid needs at least two points, got {size}")
        points = measures.uniform_grid(size)

        density = DensityGrid.sample(measures.gauss_density, points, DensityTag.GAUSS)
        normalised_error = measures.sup_error(measures.transfer_gauss(density, branches), density)

        unnormalised = DensityGrid.sample(lambda x: 1.0 / (1.0 + x), points)
        unnormalised_error = measures.sup_error(
            measures.transfer_gauss(unnormalised, branches), unnormalised
        )

        exact_branches = min(branches, 64)
        telescope_failures = 0
        for k in range(params["exact_points"] + 1):
            x = Fraction(k, params["exact_points"])
            partial = measures.gauss_transfer_partial_sum(x, exact_branches)
            if partial != measures.gauss_transfer_closed_form(x, exact_branches):
                telescope_failures += 1

        passed = (
            normalised_error < params["tolerance"]
            and unnormalised_error <= 1 / branches
            and telescope_failures == 0
        )
        return ExperimentReport(
            name=self.name,
            params=params,
            stats={
                "sup_error": normalised_error,
                "sup_error_unnormalised": unnormalised_error,
                "bound_unnormalised": 1 / branches,
                "telescope_failures": telescope_failures,
            },
            passed=passed,
        )


class FareyTransferExperiment(BaseExperiment):
    """1/x is fixed by the Farey transfer operator, exactly on a rational grid."""

    @property
    def name(self) -> str:
        return "farey-transfer"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"grid": 1000, "tolerance": 1e-12}

    def compute(self, **params: Any) -> ExperimentReport:
        size = params["grid"]
        exact = DensityGrid.sample(lambda x: 1 / x, measures.rational_grid(size), DensityTag.FAREY)
        exact_error = measures.sup_error(measures.transfer_farey(exact), exact)

        floating = DensityGrid.sample(
            lambda x: 1.0 / np.asarray(x, dtype=float),
            measures.uniform_grid(size, include_zero=False),
            DensityTag.FAREY,
        )
        relative = measures.transfer_farey(floating).values * floating.points
        floating_error = float(np.max(np.abs(relative - 1.0)))

        return ExperimentReport(
            name=self.name,
            params=params,
            stats={"exact_error": str(exact_error), "floating_relative_error": floating_error},
            passed=exact_error == 0 and floating_error <= params["tolerance"],
        )
