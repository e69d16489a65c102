"""JSON export and import for requirement documents.

The export is canonical: the same document always serializes to the same
bytes, and structural equality of two documents is defined as equality of
their exports. Source spans are not exported; imported nodes carry empty
spans.
"""

from __future__ import annotations

import json
from typing import Any

from hmreq.diagnostics import Diagnostic, has_errors
from hmreq.lexicon import ElementKind, Lexicon
from hmreq.nodes import (
    ARTICLES,
    IDENT_RE,
    MODALS,
    RESERVED_NAMES,
    ActorArg,
    ActorRef,
    BlockArg,
    DeclKind,
    Declaration,
    Frequency,
    KeywordArg,
    PreKind,
    PreStatement,
    Requirement,
    RequirementBlock,
    RequirementDocument,
    TextArg,
)

SCHEMA_VERSION = "1"


class ExportBlocked(RuntimeError):
    """Export was requested for a document that has Error diagnostics."""


class SchemaError(ValueError):
    """An imported document violates the schema.

    ``path`` points at the offending node, e.g. ``requirements[2].block``.
    """

    def __init__(self, message: str, path: str) -> None:
        super().__init__(f"{path or '$'}: {message}")
        self.path = path


# export --------------------------------------------------------------------


def _pre_to_dict(pre: PreStatement) -> dict[str, Any]:
    out: dict[str, Any] = {"variant": pre.kind.value}
    if pre.subject is not None:
        subject: dict[str, Any] = {"actor": pre.subject.name}
        if pre.subject.article is not None:
            subject["article"] = pre.subject.article
        out["subject"] = subject
    if pre.condition is not None:
        out["condition"] = pre.condition
    return out


def _arg_to_dict(arg: BlockArg) -> dict[str, Any]:
    if isinstance(arg, ActorArg):
        out: dict[str, Any] = {"kind": "actor", "value": arg.ref.name}
        if arg.ref.article is not None:
            out["article"] = arg.ref.article
        return out
    if isinstance(arg, TextArg):
        return {"kind": "text", "value": arg.value}
    return {"kind": "keyword", "value": arg.value}


def _block_to_dict(block: RequirementBlock) -> dict[str, Any]:
    adjuncts: dict[str, Any] = {}
    if block.means is not None:
        adjuncts["means"] = block.means
    if block.frequency is not None:
        adjuncts["frequency"] = {
            "value": block.frequency.value,
            "unit": block.frequency.unit,
        }
    return {
        "rule": block.rule_id,
        "verb": block.verb,
        "args": [_arg_to_dict(a) for a in block.args],
        "adjuncts": adjuncts,
    }


def _requirement_to_dict(req: Requirement) -> dict[str, Any]:
    return {
        "id": req.id,
        "pre": _pre_to_dict(req.pre),
        "actor": req.actor.name,
        "modal": req.modal,
        "negated": req.negated,
        "block": _block_to_dict(req.block),
        "stakeholders": req.unique_stakeholders(),
    }


def document_to_dict(doc: RequirementDocument) -> dict[str, Any]:
    """The schema object without the top-level version marker."""
    return {
        "declarations": [
            {"kind": d.kind.value, "name": d.name} for d in doc.declarations
        ],
        "requirements": [
            _requirement_to_dict(r) for r in doc.requirements
        ],
    }


def to_json(
    doc: RequirementDocument,
    diagnostics: list[Diagnostic] | tuple[Diagnostic, ...] = (),
) -> str:
    """Serialize a document to canonical JSON text.

    ``diagnostics`` are the diagnostics the document was produced with;
    passing any Error raises ExportBlocked instead of exporting.
    """
    if has_errors(list(diagnostics)):
        raise ExportBlocked(
            "document has Error diagnostics and cannot be exported"
        )
    payload: dict[str, Any] = {"schemaVersion": SCHEMA_VERSION}
    payload.update(document_to_dict(doc))
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def structurally_equal(
    a: RequirementDocument, b: RequirementDocument
) -> bool:
    """Equality up to source spans, via the canonical export."""
    return document_to_dict(a) == document_to_dict(b)


# import --------------------------------------------------------------------


def _expect_type(value: Any, type_: type, path: str, what: str) -> Any:
    if not isinstance(value, type_):
        raise SchemaError(f"{what} must be {type_.__name__}", path)
    return value


def _expect_str(value: Any, path: str, what: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{what} must be a string", path)
    return value


def _check_quoted_text(value: str, path: str) -> str:
    if '"' in value or "\n" in value:
        raise SchemaError(
            "quoted text cannot contain double quotes or newlines", path
        )
    return value


def _check_name(value: Any, path: str, what: str) -> str:
    name = _expect_str(value, path, what)
    if not IDENT_RE.match(name):
        raise SchemaError(f"{what} {name!r} is not a valid identifier", path)
    if name in RESERVED_NAMES:
        raise SchemaError(f"{what} {name!r} is a reserved word", path)
    return name


def _check_keys(obj: dict[str, Any], allowed: set[str], path: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise SchemaError(
            f"unknown key {sorted(unknown)[0]!r}", path
        )


def _parse_declarations(
    raw: Any, path: str
) -> tuple[list[Declaration], dict[str, DeclKind]]:
    _expect_type(raw, list, path, "declarations")
    decls: list[Declaration] = []
    table: dict[str, DeclKind] = {}
    for i, item in enumerate(raw):
        here = f"{path}[{i}]"
        _expect_type(item, dict, here, "declaration")
        _check_keys(item, {"kind", "name"}, here)
        kind_raw = _expect_str(item.get("kind"), f"{here}.kind", "kind")
        try:
            kind = DeclKind(kind_raw)
        except ValueError:
            raise SchemaError(
                f"kind must be 'stakeholder' or 'actor', got {kind_raw!r}",
                f"{here}.kind",
            ) from None
        name = _check_name(item.get("name"), f"{here}.name", "name")
        if name in table:
            raise SchemaError(
                f"duplicate declaration {name!r}", f"{here}.name"
            )
        table[name] = kind
        decls.append(Declaration(kind=kind, name=name))
    return decls, table


def _parse_subject(
    raw: Any, table: dict[str, DeclKind], path: str
) -> ActorRef:
    _expect_type(raw, dict, path, "subject")
    _check_keys(raw, {"actor", "article"}, path)
    name = _check_name(raw.get("actor"), f"{path}.actor", "subject actor")
    if name not in table:
        raise SchemaError(
            f"actor {name!r} is not declared", f"{path}.actor"
        )
    article = raw.get("article")
    if article is not None:
        article = _expect_str(article, f"{path}.article", "article")
        if article not in ARTICLES:
            raise SchemaError(
                f"article must be one of the/a/an, got {article!r}",
                f"{path}.article",
            )
    return ActorRef(name=name, article=article)


def _parse_pre(
    raw: Any, table: dict[str, DeclKind], path: str
) -> PreStatement:
    _expect_type(raw, dict, path, "pre")
    _check_keys(raw, {"variant", "subject", "condition"}, path)
    variant_raw = _expect_str(
        raw.get("variant"), f"{path}.variant", "variant"
    )
    try:
        kind = PreKind(variant_raw)
    except ValueError:
        raise SchemaError(
            f"unknown pre-statement variant {variant_raw!r}",
            f"{path}.variant",
        ) from None
    subject = None
    condition = None
    if kind is PreKind.UBIQUITOUS:
        if "subject" in raw or "condition" in raw:
            raise SchemaError(
                "ubiquitous pre-statements carry no subject or condition",
                path,
            )
    else:
        condition = _check_quoted_text(
            _expect_str(
                raw.get("condition"), f"{path}.condition", "condition"
            ),
            f"{path}.condition",
        )
        if "subject" in raw:
            if kind is PreKind.WHERE:
                raise SchemaError(
                    "where pre-statements take no subject", f"{path}.subject"
                )
            subject = _parse_subject(
                raw.get("subject"), table, f"{path}.subject"
            )
    return PreStatement(kind=kind, subject=subject, condition=condition)


def _parse_args(
    raw: Any, table: dict[str, DeclKind], path: str
) -> list[BlockArg]:
    _expect_type(raw, list, path, "args")
    args: list[BlockArg] = []
    for i, item in enumerate(raw):
        here = f"{path}[{i}]"
        _expect_type(item, dict, here, "argument")
        _check_keys(item, {"kind", "value", "article"}, here)
        kind = _expect_str(item.get("kind"), f"{here}.kind", "kind")
        value = _expect_str(item.get("value"), f"{here}.value", "value")
        article = item.get("article")
        if article is not None and kind != "actor":
            raise SchemaError(
                "only actor arguments may carry an article", f"{here}.article"
            )
        if kind == "actor":
            name = _check_name(value, f"{here}.value", "actor")
            if name not in table:
                raise SchemaError(
                    f"actor {name!r} is not declared", f"{here}.value"
                )
            if article is not None:
                article = _expect_str(
                    article, f"{here}.article", "article"
                )
                if article not in ARTICLES:
                    raise SchemaError(
                        f"article must be one of the/a/an, got {article!r}",
                        f"{here}.article",
                    )
            args.append(ActorArg(ref=ActorRef(name=name, article=article)))
        elif kind == "text":
            args.append(
                TextArg(value=_check_quoted_text(value, f"{here}.value"))
            )
        elif kind == "keyword":
            args.append(KeywordArg(value=value))
        else:
            raise SchemaError(
                f"argument kind must be actor/text/keyword, got {kind!r}",
                f"{here}.kind",
            )
    return args


def _check_frame_binding(
    block: RequirementBlock, lexicon: Lexicon, path: str
) -> None:
    """Re-run positional frame binding over imported args."""
    rule = lexicon.rule(block.rule_id)
    assert rule is not None  # caller resolved it
    args = list(block.args)
    pos = 0
    for elem in rule.core_elements:
        arg = args[pos] if pos < len(args) else None
        matches = (
            (elem.kind is ElementKind.ACTOR and isinstance(arg, ActorArg))
            or (elem.kind is ElementKind.TEXT and isinstance(arg, TextArg))
            or (
                elem.kind is ElementKind.KEYWORD
                and isinstance(arg, KeywordArg)
                and arg.value in elem.keywords
            )
        )
        if matches:
            pos += 1
        elif not elem.optional:
            raise SchemaError(
                f"arguments do not fit rule {block.rule_id!r}", path
            )
    if pos != len(args):
        raise SchemaError(
            f"arguments do not fit rule {block.rule_id!r}", path
        )
    if block.means is not None and not rule.allows_means:
        raise SchemaError(
            f"rule {block.rule_id!r} does not take a by-means-of adjunct",
            f"{path}.adjuncts.means",
        )
    if block.frequency is not None and not rule.allows_frequency:
        raise SchemaError(
            f"rule {block.rule_id!r} does not take a frequency adjunct",
            f"{path}.adjuncts.frequency",
        )


def _parse_block(
    raw: Any,
    table: dict[str, DeclKind],
    lexicon: Lexicon,
    path: str,
) -> RequirementBlock:
    _expect_type(raw, dict, path, "block")
    _check_keys(raw, {"rule", "verb", "args", "adjuncts"}, path)
    rule_id = _expect_str(raw.get("rule"), f"{path}.rule", "rule")
    rule = lexicon.rule(rule_id)
    if rule is None:
        raise SchemaError(
            f"rule {rule_id!r} is not in the lexicon", f"{path}.rule"
        )
    verb = _expect_str(raw.get("verb"), f"{path}.verb", "verb")
    if verb not in rule.verbs:
        raise SchemaError(
            f"verb {verb!r} does not belong to rule {rule_id!r}",
            f"{path}.verb",
        )
    args = _parse_args(raw.get("args", []), table, f"{path}.args")
    adjuncts_raw = raw.get("adjuncts", {})
    _expect_type(adjuncts_raw, dict, f"{path}.adjuncts", "adjuncts")
    _check_keys(
        adjuncts_raw, {"means", "frequency"}, f"{path}.adjuncts"
    )
    means = adjuncts_raw.get("means")
    if means is not None:
        means = _check_quoted_text(
            _expect_str(means, f"{path}.adjuncts.means", "means"),
            f"{path}.adjuncts.means",
        )
    frequency = None
    freq_raw = adjuncts_raw.get("frequency")
    if freq_raw is not None:
        fp = f"{path}.adjuncts.frequency"
        _expect_type(freq_raw, dict, fp, "frequency")
        _check_keys(freq_raw, {"value", "unit"}, fp)
        value = _check_quoted_text(
            _expect_str(freq_raw.get("value"), f"{fp}.value", "value"),
            f"{fp}.value",
        )
        unit = _expect_str(freq_raw.get("unit"), f"{fp}.unit", "unit")
        if not IDENT_RE.match(unit):
            raise SchemaError(
                f"frequency unit {unit!r} must be a single word", f"{fp}.unit"
            )
        frequency = Frequency(value=value, unit=unit)
    block = RequirementBlock(
        rule_id=rule_id,
        verb=verb,
        args=args,
        means=means,
        frequency=frequency,
    )
    _check_frame_binding(block, lexicon, path)
    return block


def _parse_requirement(
    raw: Any,
    table: dict[str, DeclKind],
    lexicon: Lexicon,
    seen_ids: set[str],
    path: str,
) -> Requirement:
    _expect_type(raw, dict, path, "requirement")
    _check_keys(
        raw,
        {"id", "pre", "actor", "modal", "negated", "block", "stakeholders"},
        path,
    )
    req_id = _check_name(raw.get("id"), f"{path}.id", "requirement id")
    if req_id in seen_ids:
        raise SchemaError(
            f"duplicate requirement id {req_id!r}", f"{path}.id"
        )
    seen_ids.add(req_id)
    pre = _parse_pre(raw.get("pre"), table, f"{path}.pre")
    actor_name = _check_name(raw.get("actor"), f"{path}.actor", "actor")
    if actor_name not in table:
        raise SchemaError(
            f"actor {actor_name!r} is not declared", f"{path}.actor"
        )
    modal = _expect_str(raw.get("modal"), f"{path}.modal", "modal")
    if modal not in MODALS:
        raise SchemaError(
            f"modal must be one of {'/'.join(MODALS)}, got {modal!r}",
            f"{path}.modal",
        )
    negated = raw.get("negated", False)
    if not isinstance(negated, bool):
        raise SchemaError("negated must be a boolean", f"{path}.negated")
    block = _parse_block(raw.get("block"), table, lexicon, f"{path}.block")
    stakeholders_raw = raw.get("stakeholders")
    _expect_type(
        stakeholders_raw, list, f"{path}.stakeholders", "stakeholders"
    )
    if not stakeholders_raw:
        raise SchemaError(
            "stakeholders must be a non-empty list", f"{path}.stakeholders"
        )
    stakeholders: list[str] = []
    for i, item in enumerate(stakeholders_raw):
        here = f"{path}.stakeholders[{i}]"
        name = _check_name(item, here, "stakeholder")
        if table.get(name) is not DeclKind.STAKEHOLDER:
            raise SchemaError(
                f"{name!r} is not a declared stakeholder", here
            )
        if name in stakeholders:
            raise SchemaError(
                f"stakeholder {name!r} is listed twice", here
            )
        stakeholders.append(name)
    return Requirement(
        id=req_id,
        pre=pre,
        actor=ActorRef(name=actor_name),
        modal=modal,
        negated=negated,
        block=block,
        stakeholders=stakeholders,
    )


def document_from_dict(
    raw: Any, lexicon: Lexicon, path: str = ""
) -> RequirementDocument:
    """Build a document from the schema object (no version marker)."""
    _expect_type(raw, dict, path, "document")
    prefix = f"{path}." if path else ""
    decls, table = _parse_declarations(
        raw.get("declarations", []), f"{prefix}declarations"
    )
    reqs_path = f"{prefix}requirements"
    reqs_raw = raw.get("requirements", [])
    _expect_type(reqs_raw, list, reqs_path, "requirements")
    seen_ids: set[str] = set()
    requirements = [
        _parse_requirement(item, table, lexicon, seen_ids, f"{reqs_path}[{i}]")
        for i, item in enumerate(reqs_raw)
    ]
    return RequirementDocument(
        declarations=decls, requirements=requirements
    )


def from_json(text: str, lexicon: Lexicon) -> RequirementDocument:
    """Parse exported JSON back into a document.

    Inverse of ``to_json`` up to source spans. Raises SchemaError with a
    JSON path on any violation. A missing schemaVersion is read as "1".
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}", "") from exc
    _expect_type(raw, dict, "", "document")
    version = raw.get("schemaVersion", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schemaVersion {version!r}", "schemaVersion"
        )
    allowed = {"schemaVersion", "declarations", "requirements"}
    _check_keys(raw, allowed, "")
    return document_from_dict(
        {
            "declarations": raw.get("declarations", []),
            "requirements": raw.get("requirements", []),
        },
        lexicon,
    )
