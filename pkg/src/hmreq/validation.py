"""Document-level validation producing Warning diagnostics.

These checks run on a well-formed AST and never block export; they flag
constructs that are legal but usually unintended.
"""

from __future__ import annotations

import re

from hmreq import diagnostics as diag
from hmreq.diagnostics import Diagnostic
from hmreq.nodes import DeclKind, Requirement, RequirementDocument


def validate(doc: RequirementDocument) -> list[Diagnostic]:
    out: list[Diagnostic] = []
    actor_names = doc.actor_names()
    for req in doc.requirements:
        _check_duplicate_stakeholders(req, out)
        _check_block_actors_relevant(req, doc, out)
        _check_embedded_actors(req, actor_names, out)
    _check_unused_stakeholders(doc, out)
    return sorted(out, key=lambda d: d.span.start)


def _check_duplicate_stakeholders(
    req: Requirement, out: list[Diagnostic]
) -> None:
    seen: set[str] = set()
    for name in req.stakeholders:
        if name in seen:
            out.append(
                diag.warning(
                    diag.W_DUPLICATE_STAKEHOLDER,
                    f"stakeholder '{name}' is listed more than once in "
                    f"requirement '{req.id}'",
                    req.span,
                )
            )
        seen.add(name)


def _check_block_actors_relevant(
    req: Requirement, doc: RequirementDocument, out: list[Diagnostic]
) -> None:
    stakeholder_decls = doc.stakeholder_names()
    listed = set(req.stakeholders)
    for arg in req.block.actor_args():
        name = arg.ref.name
        if name in stakeholder_decls and name not in listed:
            out.append(
                diag.warning(
                    diag.W_ACTOR_NOT_RELEVANT,
                    f"requirement '{req.id}' monitors stakeholder "
                    f"'{name}' but does not list them under "
                    "Relevant-Stakeholders",
                    arg.span,
                )
            )


def _check_embedded_actors(
    req: Requirement, actor_names: set[str], out: list[Diagnostic]
) -> None:
    if not actor_names:
        return
    pattern = re.compile(
        r"\b(" + "|".join(re.escape(n) for n in sorted(actor_names)) + r")\b"
    )
    for text, span in req.quoted_strings():
        m = pattern.search(text)
        if m:
            out.append(
                diag.warning(
                    diag.W_EMBEDDED_ACTOR,
                    f"quoted string in requirement '{req.id}' mentions "
                    f"declared actor '{m.group(1)}'; consider an actor "
                    "reference so the tooling can see the relationship",
                    span,
                )
            )


def _check_unused_stakeholders(
    doc: RequirementDocument, out: list[Diagnostic]
) -> None:
    used: set[str] = set()
    for req in doc.requirements:
        used.update(req.stakeholders)
        used.add(req.actor.name)
        if req.pre.subject is not None:
            used.add(req.pre.subject.name)
        for arg in req.block.actor_args():
            used.add(arg.ref.name)
    for decl in doc.declarations:
        if decl.kind is DeclKind.STAKEHOLDER and decl.name not in used:
            out.append(
                diag.warning(
                    diag.W_UNUSED_STAKEHOLDER,
                    f"stakeholder '{decl.name}' is declared but never "
                    "referenced",
                    decl.span,
                )
            )
