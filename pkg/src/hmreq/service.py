"""HTTP service exposing a project to the negotiation dashboard.

Reads serve an immutable in-memory snapshot; writes are serialized with a
lock and persisted to the project file before the response is sent, so a
restart never loses an acknowledged write. Every non-2xx response carries
the body shape ``{"httpStatus": ..., "code": ..., "detail": ...}``.
"""

from __future__ import annotations

import threading
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from hmreq.jsonio import SchemaError, document_from_dict
from hmreq.lexicon import Lexicon, load_seed_lexicon
from hmreq.project import (
    NotRelevantError,
    Project,
    StaleRevisionError,
    UnknownRequirementError,
    ValueAssignment,
    load_project,
    save_project,
    upsert_assignment,
)
from hmreq.render import render_requirement
from hmreq.values import ConflictReport, UnknownValueError, ValueSpace, load_value_space

JSON_SCHEMA_VERSION = "1"


class ApiError(Exception):
    def __init__(self, http_status: int, code: str, detail: str) -> None:
        super().__init__(detail)
        self.http_status = http_status
        self.code = code
        self.detail = detail

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.http_status,
            content={
                "httpStatus": self.http_status,
                "code": self.code,
                "detail": self.detail,
            },
        )


class AssignmentBody(BaseModel):
    valueId: str
    statement: str
    revision: int


class ProjectStore:
    """Holds the live project and serializes mutations."""

    def __init__(self, path: str, project: Project) -> None:
        self.path = path
        self._project = project
        self._lock = threading.Lock()

    @property
    def project(self) -> Project:
        return self._project

    def replace(self, mutate) -> Any:
        """Apply ``mutate(project) -> (new_project, result)`` atomically.

        The new project is persisted before it becomes visible; if the
        save fails, memory is left unchanged.
        """
        with self._lock:
            new_project, result = mutate(self._project)
            save_project(new_project, self.path)
            self._project = new_project
            return result


def _assignment_payload(a: ValueAssignment) -> dict[str, Any]:
    return {
        "requirementId": a.requirement_id,
        "stakeholderId": a.stakeholder_id,
        "valueId": a.value_id,
        "statement": a.statement,
        "updatedAt": a.updated_at,
        "revision": a.revision,
    }


def _conflict_payload(
    requirement_id: str, report: ConflictReport
) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "requirementId": requirement_id,
        "pairs": [
            {
                "stakeholderA": p.stakeholder_a,
                "stakeholderB": p.stakeholder_b,
                "valueA": p.value_a,
                "valueB": p.value_b,
                "statementA": p.statement_a,
                "statementB": p.statement_b,
                "score": p.score,
                "quartile": p.quartile,
            }
            for p in report.pairs
        ],
    }
    if report.average is not None:
        payload["average"] = report.average
    return payload


def create_app(
    project_path: str,
    lexicon: Lexicon | None = None,
    space: ValueSpace | None = None,
) -> FastAPI:
    lexicon = lexicon or load_seed_lexicon()
    space = space or load_value_space()
    project = load_project(project_path, lexicon, space)
    store = ProjectStore(project_path, project)

    app = FastAPI(title="hmreq", docs_url=None, redoc_url=None)
    app.state.store = store
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(ApiError)
    async def handle_api_error(
        request: Request, exc: ApiError
    ) -> JSONResponse:
        return exc.response()

    @app.exception_handler(StarletteHTTPException)
    async def handle_http_exception(
        request: Request, exc: StarletteHTTPException
    ) -> JSONResponse:
        return ApiError(
            exc.status_code, "http_error", str(exc.detail)
        ).response()

    @app.exception_handler(RequestValidationError)
    async def handle_validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        return ApiError(422, "validation_error", str(exc)).response()

    def get_requirement(project: Project, requirement_id: str):
        req = project.document.requirement(requirement_id)
        if req is None:
            raise ApiError(
                404,
                "unknown_requirement",
                f"no requirement with id {requirement_id!r}",
            )
        return req

    @app.get("/api/requirements")
    def list_requirements() -> list[dict[str, Any]]:
        project = store.project
        out = []
        for req in project.document.requirements:
            report = space.requirement_conflicts(
                project.assignments_for(req.id)
            )
            item: dict[str, Any] = {
                "id": req.id,
                "renderedText": render_requirement(req),
                "stakeholders": req.unique_stakeholders(),
            }
            average = report.average
            if average is not None:
                item["averageConflict"] = average
                item["highlightIntensity"] = average
            out.append(item)
        return out

    @app.get("/api/requirements/{requirement_id}/conflicts")
    def requirement_conflicts(requirement_id: str) -> dict[str, Any]:
        project = store.project
        req = get_requirement(project, requirement_id)
        report = space.requirement_conflicts(
            project.assignments_for(req.id)
        )
        return _conflict_payload(req.id, report)

    @app.get("/api/requirements/{requirement_id}/assignments")
    def list_assignments(requirement_id: str) -> list[dict[str, Any]]:
        project = store.project
        req = get_requirement(project, requirement_id)
        return [
            _assignment_payload(a)
            for a in project.assignments_for(req.id)
        ]

    @app.put("/api/requirements/{requirement_id}/assignments/{stakeholder_id}")
    def put_assignment(
        requirement_id: str, stakeholder_id: str, body: AssignmentBody
    ) -> dict[str, Any]:
        def mutate(project: Project):
            try:
                return upsert_assignment(
                    project,
                    space,
                    requirement_id=requirement_id,
                    stakeholder_id=stakeholder_id,
                    value_id=body.valueId,
                    statement=body.statement,
                    revision=body.revision,
                )
            except UnknownRequirementError as exc:
                raise ApiError(404, "unknown_requirement", str(exc)) from exc
            except NotRelevantError as exc:
                raise ApiError(422, "not_relevant", str(exc)) from exc
            except UnknownValueError as exc:
                raise ApiError(
                    422,
                    "unknown_value",
                    f"unknown value id {exc.args[0]!r}",
                ) from exc
            except StaleRevisionError as exc:
                raise ApiError(409, "stale_revision", str(exc)) from exc

        stored = store.replace(mutate)
        return _assignment_payload(stored)

    @app.get("/api/values")
    def list_values() -> list[dict[str, Any]]:
        return [
            {"id": v.id, "label": v.label, "group": v.group}
            for v in space.values
        ]

    @app.get("/api/values/quartiles")
    def value_quartiles() -> dict[str, float]:
        d = space.distribution
        return {"q1": d.q1, "q2": d.q2, "q3": d.q3}

    @app.post("/api/import")
    async def import_document(request: Request) -> dict[str, Any]:
        try:
            raw = await request.json()
        except ValueError as exc:
            raise ApiError(
                422, "schema_error", f"body is not valid JSON: {exc}"
            ) from exc
        if not isinstance(raw, dict):
            raise ApiError(422, "schema_error", "body must be an object")
        version = raw.get("schemaVersion", JSON_SCHEMA_VERSION)
        if version != JSON_SCHEMA_VERSION:
            raise ApiError(
                422,
                "schema_error",
                f"unsupported schemaVersion {version!r}",
            )
        try:
            document = document_from_dict(
                {
                    "declarations": raw.get("declarations", []),
                    "requirements": raw.get("requirements", []),
                },
                lexicon,
            )
        except SchemaError as exc:
            raise ApiError(422, "schema_error", str(exc)) from exc

        def mutate(project: Project):
            kept: list[ValueAssignment] = []
            dropped: list[dict[str, str]] = []
            for a in project.assignments:
                req = document.requirement(a.requirement_id)
                if (
                    req is not None
                    and a.stakeholder_id in req.unique_stakeholders()
                ):
                    kept.append(a)
                else:
                    dropped.append(
                        {
                            "requirementId": a.requirement_id,
                            "stakeholderId": a.stakeholder_id,
                        }
                    )
            new_project = Project(
                document=document, assignments=tuple(kept)
            )
            return new_project, dropped

        dropped = store.replace(mutate)
        return {"dropped": dropped}

    return app
