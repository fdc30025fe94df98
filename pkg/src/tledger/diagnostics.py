"""Source locations and diagnostics for the journal file format."""

from __future__ import annotations

import enum
from dataclasses import dataclass

__all__ = ["Severity", "SourceSpan", "ParseDiagnostic"]


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True, slots=True)
class SourceSpan:
    """A 1-based (line, column) location with a length in characters."""

    file: str
    line: int
    column: int
    length: int

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")
        if self.length < 0:
            raise ValueError("length must be >= 0")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True, slots=True)
class ParseDiagnostic:
    """A located message; every error carries a span."""

    severity: Severity
    message: str
    span: SourceSpan

    def render(self) -> str:
        return f"{self.span}: {self.severity.value}: {self.message}"
