from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field

from farey_flow.config import settings


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"
    SVG = "svg"


class CommandSpec(BaseModel):
    """Validated global options of one CLI invocation."""

    model_config = ConfigDict(extra="forbid")

    command: str = Field(..., pattern="^(expand|code|section|closed|measure|draw)$")
    format: OutputFormat = OutputFormat.TEXT
    seed: int = Field(settings.SEED, ge=0, lt=2**64)
    precision: int = Field(settings.PRECISION, ge=16, le=1_000_000)
    out: Optional[Path] = None
    options: Dict[str, Any] = Field(default_factory=dict)


class OutputRecord(BaseModel):
    """One JSON-lines record per logical step; unset fields are omitted."""

    model_config = ConfigDict(extra="forbid")

    kind: str
    index: Optional[int] = None
    digit: Optional[int] = None
    letter: Optional[str] = None
    parity: Optional[int] = None
    return_time: Optional[float] = None
    past: Optional[str] = None
    future: Optional[str] = None
    value: Optional[str] = None
    extra: Dict[str, Any] = Field(default_factory=dict)

    def to_json(self) -> str:
        return self.model_dump_json(exclude_none=True, exclude_defaults=False)


class ExperimentReport(BaseModel):
    """Result of a measure experiment, serialised as {name, params, stats, pass}."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    params: Dict[str, Any] = Field(default_factory=dict)
    stats: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(..., alias="pass")

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True)
