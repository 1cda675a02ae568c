"""Shared output for subcommands: JSON-lines records or plain text lines."""

import sys
from typing import IO, List, Optional, Union

import mpmath

from farey_flow.models import CommandSpec, OutputFormat, OutputRecord


def number_text(value: Union[float, mpmath.mpf]) -> str:
    """17 significant digits."""
    return mpmath.nstr(mpmath.mpf(value), 17, min_fixed=-6, max_fixed=17)


class Emitter:
    """Collects output in the requested format and writes it to --out or standard output."""

    def __init__(self, spec: CommandSpec, stream: Optional[IO[str]] = None) -> None:
        self.spec = spec
        self.stream = stream or sys.stdout
        self.lines: List[str] = []

    @property
    def is_json(self) -> bool:
        return self.spec.format == OutputFormat.JSON

    def record(self, record: OutputRecord, text: Optional[str] = None) -> None:
        """JSON mode writes the record; text mode writes ``text`` when given."""
        if self.is_json:
            self.lines.append(record.to_json())
        elif text is not None:
            self.lines.append(text)

    def text(self, line: str) -> None:
        if not self.is_json:
            self.lines.append(line)

    def raw(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        content = "".join(f"{line}\n" for line in self.lines)
        if self.spec.out is not None:
            with open(self.spec.out, "w", encoding="utf-8") as handle:
                handle.write(content)
        else:
            self.stream.write(content)
        self.lines = []
