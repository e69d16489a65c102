"""Persistent project store: a document plus per-stakeholder value assignments.

A project file bundles a requirement document with the value assignments
made during negotiation. Saves are atomic (write to a temp file in the
same directory, then rename) and canonical, so identical projects always
produce identical bytes. Concurrent edits are handled with optimistic
revisions: an upsert must carry the current revision + 1 (or 1 for a new
assignment) or it is rejected.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from typing import Any, Callable

from hmreq.jsonio import SchemaError, document_from_dict, document_to_dict
from hmreq.lexicon import Lexicon
from hmreq.nodes import RequirementDocument
from hmreq.values import UnknownValueError, ValueSpace

SCHEMA_VERSION = "1"


class ProjectError(ValueError):
    """Base class for project store failures."""


class ProjectFileError(ProjectError):
    """The project file is unreadable or structurally broken."""


class VersionError(ProjectError):
    """The project file uses an unsupported schema version."""


class UnknownRequirementError(ProjectError):
    def __init__(self, requirement_id: str) -> None:
        super().__init__(f"no requirement with id {requirement_id!r}")
        self.requirement_id = requirement_id


class NotRelevantError(ProjectError):
    def __init__(self, requirement_id: str, stakeholder_id: str) -> None:
        super().__init__(
            f"stakeholder {stakeholder_id!r} is not listed under "
            f"Relevant-Stakeholders of requirement {requirement_id!r}"
        )
        self.requirement_id = requirement_id
        self.stakeholder_id = stakeholder_id


class StaleRevisionError(ProjectError):
    def __init__(self, expected: int, got: int) -> None:
        super().__init__(
            f"stale revision: expected {expected}, got {got}"
        )
        self.expected = expected
        self.got = got


@dataclass(frozen=True)
class ValueAssignment:
    requirement_id: str
    stakeholder_id: str
    value_id: str
    statement: str
    updated_at: str
    revision: int


@dataclass(frozen=True)
class Project:
    document: RequirementDocument
    assignments: tuple[ValueAssignment, ...] = ()

    def assignments_for(
        self, requirement_id: str
    ) -> tuple[ValueAssignment, ...]:
        return tuple(
            a
            for a in self.assignments
            if a.requirement_id == requirement_id
        )

    def find_assignment(
        self, requirement_id: str, stakeholder_id: str
    ) -> ValueAssignment | None:
        for a in self.assignments:
            if (
                a.requirement_id == requirement_id
                and a.stakeholder_id == stakeholder_id
            ):
                return a
        return None

    def to_dict(self) -> dict[str, Any]:
        return {
            "schemaVersion": SCHEMA_VERSION,
            "document": document_to_dict(self.document),
            "assignments": [
                {
                    "requirementId": a.requirement_id,
                    "stakeholderId": a.stakeholder_id,
                    "valueId": a.value_id,
                    "statement": a.statement,
                    "updatedAt": a.updated_at,
                    "revision": a.revision,
                }
                for a in self.assignments
            ],
        }


def new_project(document: RequirementDocument) -> Project:
    return Project(document=document)


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


def _timestamp(clock: Callable[[], datetime]) -> str:
    moment = clock().astimezone(timezone.utc).replace(microsecond=0)
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def upsert_assignment(
    project: Project,
    space: ValueSpace,
    *,
    requirement_id: str,
    stakeholder_id: str,
    value_id: str,
    statement: str,
    revision: int,
    clock: Callable[[], datetime] = _utc_now,
) -> tuple[Project, ValueAssignment]:
    """Insert or update one stakeholder's assignment on a requirement.

    Returns the new project and the stored assignment. The caller's
    revision must be exactly one above the stored revision (1 when the
    assignment is new), otherwise StaleRevisionError is raised and
    nothing changes.
    """
    req = project.document.requirement(requirement_id)
    if req is None:
        raise UnknownRequirementError(requirement_id)
    if stakeholder_id not in req.unique_stakeholders():
        raise NotRelevantError(requirement_id, stakeholder_id)
    space.value(value_id)  # raises UnknownValueError on a bad id
    existing = project.find_assignment(requirement_id, stakeholder_id)
    expected = existing.revision + 1 if existing else 1
    if revision != expected:
        raise StaleRevisionError(expected=expected, got=revision)
    stored = ValueAssignment(
        requirement_id=requirement_id,
        stakeholder_id=stakeholder_id,
        value_id=value_id,
        statement=statement,
        updated_at=_timestamp(clock),
        revision=revision,
    )
    if existing is None:
        assignments = project.assignments + (stored,)
    else:
        assignments = tuple(
            stored if a is existing else a for a in project.assignments
        )
    return replace(project, assignments=assignments), stored


def save_project(project: Project, path: str) -> None:
    """Write the project atomically as canonical JSON."""
    payload = (
        json.dumps(project.to_dict(), indent=2, ensure_ascii=False) + "\n"
    )
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(
        dir=directory, prefix=".hmreq-", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _parse_assignment(
    raw: Any,
    document: RequirementDocument,
    space: ValueSpace,
    index: int,
) -> ValueAssignment:
    where = f"assignments[{index}]"
    if not isinstance(raw, dict):
        raise ProjectFileError(f"{where}: expected an object")
    required = {
        "requirementId": str,
        "stakeholderId": str,
        "valueId": str,
        "statement": str,
        "updatedAt": str,
        "revision": int,
    }
    for key, type_ in required.items():
        value = raw.get(key)
        if not isinstance(value, type_) or isinstance(value, bool):
            raise ProjectFileError(
                f"{where}.{key}: expected {type_.__name__}"
            )
    unknown = set(raw) - set(required)
    if unknown:
        raise ProjectFileError(
            f"{where}: unknown key {sorted(unknown)[0]!r}"
        )
    requirement_id = raw["requirementId"]
    stakeholder_id = raw["stakeholderId"]
    req = document.requirement(requirement_id)
    if req is None:
        raise ProjectFileError(
            f"{where}: no requirement with id {requirement_id!r}"
        )
    if stakeholder_id not in req.unique_stakeholders():
        raise ProjectFileError(
            f"{where}: stakeholder {stakeholder_id!r} is not relevant to "
            f"requirement {requirement_id!r}"
        )
    try:
        space.value(raw["valueId"])
    except UnknownValueError:
        raise ProjectFileError(
            f"{where}.valueId: unknown value {raw['valueId']!r}"
        ) from None
    if raw["revision"] < 1:
        raise ProjectFileError(f"{where}.revision: must be >= 1")
    return ValueAssignment(
        requirement_id=requirement_id,
        stakeholder_id=stakeholder_id,
        value_id=raw["valueId"],
        statement=raw["statement"],
        updated_at=raw["updatedAt"],
        revision=raw["revision"],
    )


def load_project(
    path: str, lexicon: Lexicon, space: ValueSpace
) -> Project:
    """Read and fully validate a project file."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ProjectFileError(f"cannot read {path}: {exc}") from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProjectFileError(
            f"{path} is not valid JSON at byte {exc.pos}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict):
        raise ProjectFileError(f"{path}: project root must be an object")
    version = raw.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise VersionError(
            f"{path}: unsupported project schemaVersion {version!r}"
        )
    unknown = set(raw) - {"schemaVersion", "document", "assignments"}
    if unknown:
        raise ProjectFileError(
            f"{path}: unknown key {sorted(unknown)[0]!r}"
        )
    try:
        document = document_from_dict(
            raw.get("document"), lexicon, path="document"
        )
    except SchemaError as exc:
        raise ProjectFileError(f"{path}: {exc}") from exc
    assignments_raw = raw.get("assignments", [])
    if not isinstance(assignments_raw, list):
        raise ProjectFileError(f"{path}: assignments must be a list")
    assignments: list[ValueAssignment] = []
    seen: set[tuple[str, str]] = set()
    for i, item in enumerate(assignments_raw):
        assignment = _parse_assignment(item, document, space, i)
        key = (assignment.requirement_id, assignment.stakeholder_id)
        if key in seen:
            raise ProjectFileError(
                f"assignments[{i}]: duplicate assignment for "
                f"{key[1]!r} on {key[0]!r}"
            )
        seen.add(key)
        assignments.append(assignment)
    return Project(document=document, assignments=tuple(assignments))
