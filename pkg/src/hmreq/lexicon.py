"""Verb-frame lexicon: rule frames keyed by verb.

A lexicon maps every supported verb to exactly one requirement-block rule.
Each rule carries an ordered frame of elements that the parser binds
positionally against the tokens of a requirement block.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from importlib import resources


class ElementKind(enum.Enum):
    VERB = "verb"
    ACTOR = "actor"
    TEXT = "text"
    KEYWORD = "keyword"
    MEANS = "means"
    FREQUENCY = "frequency"


ADJUNCT_KINDS = frozenset({ElementKind.MEANS, ElementKind.FREQUENCY})


class LexiconError(ValueError):
    """Raised when a lexicon file is malformed or inconsistent."""


@dataclass(frozen=True)
class FrameElement:
    kind: ElementKind
    optional: bool = False
    keywords: tuple[str, ...] = ()


@dataclass(frozen=True)
class RuleFrame:
    rule_id: str
    verbs: tuple[str, ...]
    frame: tuple[FrameElement, ...]
    note: str = ""

    @property
    def allows_means(self) -> bool:
        return any(e.kind is ElementKind.MEANS for e in self.frame)

    @property
    def allows_frequency(self) -> bool:
        return any(e.kind is ElementKind.FREQUENCY for e in self.frame)

    @property
    def core_elements(self) -> tuple[FrameElement, ...]:
        """Positional elements after the verb, excluding adjuncts."""
        return tuple(
            e
            for e in self.frame[1:]
            if e.kind not in ADJUNCT_KINDS
        )


@dataclass
class Lexicon:
    version: str
    rules: tuple[RuleFrame, ...]
    _by_verb: dict[str, RuleFrame] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for rule in self.rules:
            for verb in rule.verbs:
                self._by_verb[verb] = rule

    def lookup(self, verb: str) -> RuleFrame | None:
        """Resolve a verb (case-insensitive) to its rule, or None."""
        return self._by_verb.get(verb.lower())

    def rule(self, rule_id: str) -> RuleFrame | None:
        for r in self.rules:
            if r.rule_id == rule_id:
                return r
        return None

    @property
    def verb_count(self) -> int:
        return len(self._by_verb)

    @property
    def verbs(self) -> tuple[str, ...]:
        return tuple(sorted(self._by_verb))


def _parse_element(raw: object, rule_id: str, index: int) -> FrameElement:
    where = f"rule {rule_id!r}, frame element {index}"
    if not isinstance(raw, dict):
        raise LexiconError(f"{where}: expected an object")
    kind_name = raw.get("kind")
    try:
        kind = ElementKind(kind_name)
    except ValueError:
        raise LexiconError(
            f"{where}: unknown element kind {kind_name!r}"
        ) from None
    optional = raw.get("optional", False)
    if not isinstance(optional, bool):
        raise LexiconError(f"{where}: 'optional' must be a boolean")
    keywords_raw = raw.get("keywords", [])
    if not isinstance(keywords_raw, list) or any(
        not isinstance(k, str) for k in keywords_raw
    ):
        raise LexiconError(f"{where}: 'keywords' must be a list of strings")
    keywords = tuple(keywords_raw)
    if kind is ElementKind.KEYWORD:
        if not keywords:
            raise LexiconError(f"{where}: keyword element needs literals")
        for lit in keywords:
            if not lit or lit != lit.lower():
                raise LexiconError(
                    f"{where}: keyword literal {lit!r} must be non-empty "
                    "lowercase"
                )
    elif keywords:
        raise LexiconError(
            f"{where}: only keyword elements may carry literals"
        )
    if kind in ADJUNCT_KINDS and not optional:
        raise LexiconError(f"{where}: adjunct elements must be optional")
    return FrameElement(kind=kind, optional=optional, keywords=keywords)


def _parse_rule(raw: object, index: int) -> RuleFrame:
    if not isinstance(raw, dict):
        raise LexiconError(f"rule {index}: expected an object")
    rule_id = raw.get("class")
    if not isinstance(rule_id, str) or not rule_id:
        raise LexiconError(f"rule {index}: missing 'class' identifier")
    verbs_raw = raw.get("verbs")
    if not isinstance(verbs_raw, list) or not verbs_raw:
        raise LexiconError(f"rule {rule_id!r}: 'verbs' must be a non-empty list")
    verbs = []
    for verb in verbs_raw:
        if not isinstance(verb, str) or not verb or verb != verb.lower():
            raise LexiconError(
                f"rule {rule_id!r}: verb {verb!r} must be a lowercase word"
            )
        verbs.append(verb)
    frame_raw = raw.get("frame")
    if not isinstance(frame_raw, list) or not frame_raw:
        raise LexiconError(f"rule {rule_id!r}: 'frame' must be a non-empty list")
    frame = tuple(
        _parse_element(e, rule_id, i) for i, e in enumerate(frame_raw)
    )
    if frame[0].kind is not ElementKind.VERB or frame[0].optional:
        raise LexiconError(
            f"rule {rule_id!r}: frame must start with a required verb element"
        )
    if sum(1 for e in frame if e.kind is ElementKind.VERB) != 1:
        raise LexiconError(f"rule {rule_id!r}: frame must have exactly one verb")
    note = raw.get("note", "")
    if not isinstance(note, str):
        raise LexiconError(f"rule {rule_id!r}: 'note' must be a string")
    return RuleFrame(
        rule_id=rule_id, verbs=tuple(verbs), frame=frame, note=note
    )


def load_lexicon(text: str) -> Lexicon:
    """Parse a lexicon file. Raises LexiconError on any inconsistency."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LexiconError(f"lexicon is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise LexiconError("lexicon root must be an object")
    version = data.get("version")
    if version != "1":
        raise LexiconError(f"unsupported lexicon version {version!r}")
    rules_raw = data.get("rules")
    if not isinstance(rules_raw, list) or not rules_raw:
        raise LexiconError("'rules' must be a non-empty list")
    rules = tuple(_parse_rule(r, i) for i, r in enumerate(rules_raw))
    seen_ids: set[str] = set()
    seen_verbs: dict[str, str] = {}
    for rule in rules:
        if rule.rule_id in seen_ids:
            raise LexiconError(f"duplicate rule id {rule.rule_id!r}")
        seen_ids.add(rule.rule_id)
        for verb in rule.verbs:
            if verb in seen_verbs:
                raise LexiconError(
                    f"verb {verb!r} appears in both "
                    f"{seen_verbs[verb]!r} and {rule.rule_id!r}"
                )
            seen_verbs[verb] = rule.rule_id
    return Lexicon(version=version, rules=rules)


def load_lexicon_file(path: str) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return load_lexicon(fh.read())


def load_seed_lexicon() -> Lexicon:
    """Load the lexicon bundled with the package."""
    text = (
        resources.files("hmreq.data")
        .joinpath("seed_lexicon.json")
        .read_text(encoding="utf-8")
    )
    return load_lexicon(text)
