"""Exception types and the diagnostic record shared by all parsers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ERROR = "error"
WARNING = "warning"


class SenselexError(Exception):
    """Base class for every error raised by this package."""


class UnknownSenseError(SenselexError):
    """A (lemma, sense) pair does not exist in the lexicon at hand."""


class UnknownSynsetError(SenselexError):
    """A synset id does not exist in the graph at hand."""


@dataclass(frozen=True)
class Diagnostic:
    """One finding about an input, tied to a line number when there is one."""

    message: str
    line: int | None = None
    severity: str = ERROR
    source: str | None = None

    def render(self) -> str:
        where = self.source if self.source is not None else "<input>"
        lineno = str(self.line) if self.line is not None else "-"
        return f"{where}:{lineno}: {self.severity}: {self.message}"


class ValidationError(SenselexError):
    """Input rejected.  Carries every diagnostic collected before aborting."""

    def __init__(self, diagnostics: Iterable[Diagnostic], source: str | None = None):
        self.diagnostics = tuple(diagnostics)
        self.source = source
        errors = [d for d in self.diagnostics if d.severity == ERROR]
        head = "; ".join(d.message for d in errors[:3])
        tail = "" if len(errors) <= 3 else f" (+{len(errors) - 3} more)"
        super().__init__(f"{len(errors)} validation error(s): {head}{tail}")

    def render(self) -> str:
        return "\n".join(d.render() for d in self.diagnostics)
