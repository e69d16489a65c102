"""Source text handling: documents, byte spans, and line/column lookup."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    """Half-open [start, end) character range into a source document."""

    start: int
    end: int

    def extend(self, other: "Span") -> "Span":
        return Span(min(self.start, other.start), max(self.end, other.end))


EMPTY_SPAN = Span(0, 0)


@dataclass
class SourceDocument:
    """A piece of CNL source text plus the origin it was read from.

    The origin is whatever should appear in diagnostics, usually a file
    path or a placeholder such as "<stdin>".
    """

    text: str
    origin: str = "<string>"
    _line_starts: list[int] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        starts = [0]
        for i, ch in enumerate(self.text):
            if ch == "\n":
                starts.append(i + 1)
        self._line_starts = starts

    def position(self, offset: int) -> tuple[int, int]:
        """Map a character offset to a 1-based (line, column) pair."""
        offset = max(0, min(offset, len(self.text)))
        line = bisect.bisect_right(self._line_starts, offset) - 1
        return line + 1, offset - self._line_starts[line] + 1

    def line_text(self, line: int) -> str:
        """Return the 1-based line without its trailing newline."""
        if line < 1 or line > len(self._line_starts):
            return ""
        start = self._line_starts[line - 1]
        end = self.text.find("\n", start)
        if end == -1:
            end = len(self.text)
        return self.text[start:end]
