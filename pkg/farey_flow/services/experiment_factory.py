"""Factory for looking up measure experiments by name."""

import logging
from typing import Dict, Type

from farey_flow.errors import ValueParseError
from farey_flow.services.base_experiment import BaseExperiment
from farey_flow.services.experiments import (
    CensusExperiment,
    DigitsExperiment,
    EquidistributionExperiment,
    FareyTransferExperiment,
    GaussTransferExperiment,
)

logger = logging.getLogger(__name__)


class ExperimentFactory:
    """Factory for creating experiments based on their name."""

    _experiments: Dict[str, Type[BaseExperiment]] = {
        "digits": DigitsExperiment,
        "gauss-kuzmin": DigitsExperiment,  # Alias
        "equidistribution": EquidistributionExperiment,
        "census": CensusExperiment,
        "closed": CensusExperiment,  # Alias
        "gauss-transfer": GaussTransferExperiment,
        "farey-transfer": FareyTransferExperiment,
    }

    @classmethod
    def get_experiment(cls, name: str) -> BaseExperiment:
        """
        Get the experiment registered under ``name``.

        Raises:
            ValueParseError: If no experiment has that name
        """
        key = name.lower().strip()

        if key not in cls._experiments:
            available = ", ".join(cls._experiments.keys())
            raise ValueParseError(
                f"Unknown experiment '{name}'. Available experiments: {available}"
            )

        return cls._experiments[key]()

    @classmethod
    def register_experiment(cls, name: str, experiment_class: Type[BaseExperiment]) -> None:
        if not issubclass(experiment_class, BaseExperiment):
            raise ValueError("Experiment class must inherit from BaseExperiment")

        cls._experiments[name.lower().strip()] = experiment_class
        logger.info(f"Registered experiment: {name}")

    @classmethod
    def get_supported_experiments(cls) -> list[str]:
        return list(cls._experiments.keys())

    @classmethod
    def is_experiment_supported(cls, name: str) -> bool:
        return name.lower().strip() in cls._experiments
