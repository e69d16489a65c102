"""Diagnostics produced by the CNL front end.

Every diagnostic carries a stable machine-readable code, a severity, a
human-readable message, and a span into the source document it refers to.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from hmreq.source import SourceDocument, Span


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


# Error codes. A document with at least one of these has no AST.
E_UNDECLARED_ACTOR = "E001_UNDECLARED_ACTOR"
E_UNDECLARED_STAKEHOLDER = "E002_UNDECLARED_STAKEHOLDER"
E_MISSING_STAKEHOLDERS = "E003_MISSING_STAKEHOLDERS"
E_UNKNOWN_VERB = "E004_UNKNOWN_VERB"
E_FRAME_MISMATCH = "E005_FRAME_MISMATCH"
E_DUPLICATE_REQUIREMENT_ID = "E006_DUPLICATE_REQUIREMENT_ID"
E_DUPLICATE_DECLARATION = "E007_DUPLICATE_DECLARATION"
E_UNTERMINATED_STRING = "E008_UNTERMINATED_STRING"
E_SYNTAX = "E009_SYNTAX"
E_UNSUPPORTED_CONJUNCTION = "E010_UNSUPPORTED_CONJUNCTION"

# Warning codes. These never block the AST or export.
W_DUPLICATE_STAKEHOLDER = "W008_DUPLICATE_STAKEHOLDER"
W_UNUSED_STAKEHOLDER = "W009_UNUSED_STAKEHOLDER"
W_ACTOR_NOT_RELEVANT = "W010_ACTOR_NOT_RELEVANT"
W_EMBEDDED_ACTOR = "W011_EMBEDDED_ACTOR"

ALL_ERROR_CODES = frozenset(
    {
        E_UNDECLARED_ACTOR,
        E_UNDECLARED_STAKEHOLDER,
        E_MISSING_STAKEHOLDERS,
        E_UNKNOWN_VERB,
        E_FRAME_MISMATCH,
        E_DUPLICATE_REQUIREMENT_ID,
        E_DUPLICATE_DECLARATION,
        E_UNTERMINATED_STRING,
        E_SYNTAX,
        E_UNSUPPORTED_CONJUNCTION,
    }
)

ALL_WARNING_CODES = frozenset(
    {
        W_DUPLICATE_STAKEHOLDER,
        W_UNUSED_STAKEHOLDER,
        W_ACTOR_NOT_RELEVANT,
        W_EMBEDDED_ACTOR,
    }
)


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    code: str
    message: str
    span: Span

    @property
    def is_error(self) -> bool:
        return self.severity is Severity.ERROR


def error(code: str, message: str, span: Span) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span)


def warning(code: str, message: str, span: Span) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, message, span)


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


def format_diagnostic(diag: Diagnostic, src: SourceDocument) -> str:
    """Render one diagnostic as ``path:line:col: severity[code]: message``."""
    line, col = src.position(diag.span.start)
    return (
        f"{src.origin}:{line}:{col}: "
        f"{diag.severity.value}[{diag.code}]: {diag.message}"
    )


def format_diagnostic_verbose(diag: Diagnostic, src: SourceDocument) -> str:
    """Render a diagnostic with the offending source line and a caret."""
    line, col = src.position(diag.span.start)
    header = format_diagnostic(diag, src)
    source_line = src.line_text(line)
    if not source_line:
        return header
    caret = " " * (col - 1) + "^"
    return f"{header}\n  | {source_line}\n  | {caret}"
