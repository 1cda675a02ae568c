"""Base interface for measure experiments."""

import logging
from abc import ABC, abstractmethod
from typing import Any, Dict

from farey_flow.errors import ValueParseError
from farey_flow.models import ExperimentReport

logger = logging.getLogger(__name__)


class BaseExperiment(ABC):
    """Abstract base class for reproducible experiments with named parameters."""

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the registry name of the experiment (e.g., 'digits')."""
        pass

    @property
    @abstractmethod
    def default_params(self) -> Dict[str, Any]:
        """Return every accepted parameter with its default value."""
        pass

    @abstractmethod
    def compute(self, **params: Any) -> ExperimentReport:
        """
        Run the experiment with a complete parameter set.

        Args:
            **params: One value per key of ``default_params``

        Returns:
            ExperimentReport: name, params, stats and the pass flag
        """
        pass

    def resolve_params(self, overrides: Dict[str, Any]) -> Dict[str, Any]:
        """
        Merge overrides into the defaults, casting to the default's type.

        Raises:
            ValueParseError: If a parameter is unknown or cannot be cast
        """
        params = dict(self.default_params)
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in params:
                accepted = ", ".join(sorted(params))
                raise ValueParseError(
                    f"Unknown parameter '{key}' for experiment '{self.name}'. Accepted: {accepted}"
                )
            try:
                params[key] = type(params[key])(value)
            except (TypeError, ValueError) as e:
                raise ValueParseError(f"Bad value for '{key}': {value!r}") from e
        return params

    def run(self, **overrides: Any) -> ExperimentReport:
        params = self.resolve_params(overrides)
        logger.info(f"Running experiment {self.name} with {params}")
        try:
            return self.compute(**params)
        except Exception as e:
            logger.error(f"Experiment {self.name} failed: {e}")
            raise

    def describe(self) -> str:
        defaults = ", ".join(f"{key}={value}" for key, value in self.default_params.items())
        return f"{self.name}({defaults})"
