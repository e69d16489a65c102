"""Canonical text rendering for parsed documents.

The renderer emits one line per declaration and per requirement. Parsing
the rendered text yields a structurally equal document, and rendering is
idempotent at the text level.
"""

from __future__ import annotations

from hmreq.nodes import (
    ActorArg,
    ActorRef,
    KeywordArg,
    PreKind,
    Requirement,
    RequirementDocument,
    TextArg,
)


def _actor_phrase(ref: ActorRef, *, capitalize: bool = False) -> str:
    if ref.article is None:
        return ref.name
    article = ref.article.capitalize() if capitalize else ref.article
    return f"{article} {ref.name}"


def _pre_text(req: Requirement) -> str:
    pre = req.pre
    if pre.kind is PreKind.UBIQUITOUS:
        return ""
    subject = ""
    if pre.subject is not None:
        subject = _actor_phrase(pre.subject) + " "
    condition = f'"{pre.condition}"'
    if pre.kind is PreKind.WHILE:
        return f"While {subject}{condition}, "
    if pre.kind is PreKind.WHEN:
        return f"When {subject}{condition}, "
    if pre.kind is PreKind.IF_THEN:
        return f"If {subject}{condition}, then "
    return f"Where {condition}, "


def _sentence_text(req: Requirement) -> str:
    at_sentence_start = req.pre.kind is PreKind.UBIQUITOUS
    actor = req.actor
    if actor.article is None:
        # Synthesize the definite article so rendered text reads as prose
        # even for documents imported from JSON, where the main actor's
        # article is not stored.
        actor = ActorRef(name=actor.name, article="the")
    parts = [
        _actor_phrase(actor, capitalize=at_sentence_start),
        req.modal,
    ]
    if req.negated:
        parts.append("not")
    parts.append(req.block.verb)
    for arg in req.block.args:
        if isinstance(arg, ActorArg):
            parts.append(_actor_phrase(arg.ref))
        elif isinstance(arg, TextArg):
            parts.append(f'"{arg.value}"')
        elif isinstance(arg, KeywordArg):
            parts.append(arg.value)
    if req.block.means is not None:
        parts.append(f'by means of "{req.block.means}"')
    if req.block.frequency is not None:
        freq = req.block.frequency
        parts.append(f'every "{freq.value}" {freq.unit}')
    return " ".join(parts)


def render_requirement(req: Requirement) -> str:
    stakeholders = ", ".join(req.stakeholders)
    return (
        f"req {req.id}: {_pre_text(req)}{_sentence_text(req)}. "
        f"Relevant-Stakeholders: {stakeholders}."
    )


def render_document(doc: RequirementDocument) -> str:
    lines = [f"{d.kind.value} {d.name}" for d in doc.declarations]
    if doc.declarations and doc.requirements:
        lines.append("")
    lines.extend(render_requirement(req) for req in doc.requirements)
    return "\n".join(lines) + "\n" if lines else ""
