"""AST node types for parsed requirement documents.

Nodes keep the source spans they were parsed from. Two documents that
differ only in spans are considered structurally equal; use
``hmreq.jsonio.structurally_equal`` for that comparison.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from hmreq.source import EMPTY_SPAN, Span

MODALS = ("shall", "should", "must", "will", "may")
ARTICLES = ("the", "a", "an")
CAPITAL_ARTICLES = {"The": "the", "A": "a", "An": "an"}

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class DeclKind(enum.Enum):
    STAKEHOLDER = "stakeholder"
    ACTOR = "actor"


class PreKind(enum.Enum):
    UBIQUITOUS = "ubiquitous"
    WHILE = "while"
    WHEN = "when"
    IF_THEN = "if-then"
    WHERE = "where"


PRE_KEYWORD_MAP = {
    "While": PreKind.WHILE,
    "When": PreKind.WHEN,
    "If": PreKind.IF_THEN,
    "Where": PreKind.WHERE,
}

RESERVED_NAMES = (
    frozenset({"req", "stakeholder", "actor", "not", "then", "and", "or"})
    | frozenset({"by", "every", "means", "of"})
    | frozenset(MODALS)
    | frozenset(ARTICLES)
    | frozenset(CAPITAL_ARTICLES)
    | frozenset(PRE_KEYWORD_MAP)
)


@dataclass
class Declaration:
    kind: DeclKind
    name: str
    span: Span = EMPTY_SPAN


@dataclass
class ActorRef:
    """A reference to a declared actor, with the article as written."""

    name: str
    article: str | None = None
    span: Span = EMPTY_SPAN


@dataclass
class PreStatement:
    """EARS pre-statement. Ubiquitous requirements carry no condition."""

    kind: PreKind
    subject: ActorRef | None = None
    condition: str | None = None
    span: Span = EMPTY_SPAN


@dataclass
class ActorArg:
    ref: ActorRef
    span: Span = EMPTY_SPAN


@dataclass
class TextArg:
    value: str
    span: Span = EMPTY_SPAN


@dataclass
class KeywordArg:
    value: str
    span: Span = EMPTY_SPAN


BlockArg = ActorArg | TextArg | KeywordArg


@dataclass
class Frequency:
    value: str
    unit: str
    span: Span = EMPTY_SPAN


@dataclass
class RequirementBlock:
    rule_id: str
    verb: str
    args: list[BlockArg] = field(default_factory=list)
    means: str | None = None
    frequency: Frequency | None = None
    span: Span = EMPTY_SPAN

    def actor_args(self) -> list[ActorArg]:
        return [a for a in self.args if isinstance(a, ActorArg)]

    def text_args(self) -> list[TextArg]:
        return [a for a in self.args if isinstance(a, TextArg)]


@dataclass
class Requirement:
    id: str
    pre: PreStatement
    actor: ActorRef
    modal: str
    negated: bool
    block: RequirementBlock
    stakeholders: list[str]
    span: Span = EMPTY_SPAN

    def unique_stakeholders(self) -> list[str]:
        """Stakeholder list with duplicates dropped, order preserved."""
        return list(dict.fromkeys(self.stakeholders))

    def quoted_strings(self) -> list[tuple[str, Span]]:
        """Every quoted string in the requirement, with its span."""
        out: list[tuple[str, Span]] = []
        if self.pre.condition is not None:
            out.append((self.pre.condition, self.pre.span))
        for arg in self.block.args:
            if isinstance(arg, TextArg):
                out.append((arg.value, arg.span))
        if self.block.means is not None:
            out.append((self.block.means, self.block.span))
        if self.block.frequency is not None:
            out.append((self.block.frequency.value, self.block.frequency.span))
        return out


@dataclass
class RequirementDocument:
    declarations: list[Declaration] = field(default_factory=list)
    requirements: list[Requirement] = field(default_factory=list)

    def stakeholder_names(self) -> set[str]:
        return {
            d.name
            for d in self.declarations
            if d.kind is DeclKind.STAKEHOLDER
        }

    def actor_names(self) -> set[str]:
        """All actor names. Stakeholders implicitly declare actors."""
        return {d.name for d in self.declarations}

    def requirement(self, req_id: str) -> Requirement | None:
        for req in self.requirements:
            if req.id == req_id:
                return req
        return None
