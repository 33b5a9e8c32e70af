"""HTTP API over projects, analysis, what-if and shortlists.

Single-engineer desk tool: no authentication, loopback by default, CORS open
for the explorer UI. All state flows through the on-disk project store;
analyses are cached per (project, revision) so slider-driven what-if stays
cheap.
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import engine, project_io, report
from .engine import OptionSpaceError, OverrideError, WhatIfOverrides
from .model import SynergyForm
from .project_io import (
    ProjectStore,
    ProjectValidationError,
    StoreConflictError,
    StoreNotFoundError,
)

REVISION_HEADER = "X-Revision"


class ApiError(Exception):
    """Maps directly onto the JSON error body of every non-2xx response."""

    def __init__(self, status: int, code: str, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.path = path

    def response(self) -> JSONResponse:
        body = {"status": self.status, "code": self.code, "message": self.message}
        if self.path is not None:
            body["path"] = self.path
        return JSONResponse(status_code=self.status, content=body)


def _validation_error(exc: ProjectValidationError) -> ApiError:
    first_path = exc.issues[0].path if exc.issues else None
    return ApiError(422, "validation_failed", str(exc), first_path)


def create_app(data_dir: Union[str, Path]) -> FastAPI:
    store = ProjectStore(data_dir)
    app = FastAPI(title="dbases", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=[REVISION_HEADER],
    )

    # project id -> (revision, serialized AnalysisResult)
    analysis_cache: dict[str, tuple[int, str]] = {}
    cache_lock = threading.Lock()

    @app.exception_handler(ApiError)
    async def _api_error_handler(_request: Request, exc: ApiError):
        return exc.response()

    def _get_project(project_id: str):
        try:
            return store.get(project_id)
        except StoreNotFoundError as exc:
            raise ApiError(404, "not_found", str(exc)) from exc

    def _base_revision(request: Request) -> Optional[int]:
        raw = request.headers.get(REVISION_HEADER)
        if raw is None:
            return None
        try:
            return int(raw)
        except ValueError:
            raise ApiError(
                400, "bad_request", f"invalid {REVISION_HEADER} header: {raw!r}"
            )

    async def _json_body(request: Request):
        try:
            return json.loads(await request.body() or b"null")
        except json.JSONDecodeError as exc:
            raise ApiError(
                400,
                "bad_request",
                f"malformed JSON body at line {exc.lineno} column {exc.colno}: {exc.msg}",
            ) from exc

    def _analysis_json(project_id: str) -> str:
        """Serialized analysis for the committed revision, cached."""
        project, revision = _get_project(project_id)
        with cache_lock:
            cached = analysis_cache.get(project_id)
            if cached is not None and cached[0] == revision:
                return cached[1]
        try:
            result = engine.analyze(project)
        except OptionSpaceError as exc:
            raise ApiError(413, "option_space_exceeded", str(exc)) from exc
        serialized = json.dumps(result.to_doc(), sort_keys=True)
        with cache_lock:
            analysis_cache[project_id] = (revision, serialized)
        return serialized

    @app.get("/api/projects")
    async def list_projects():
        return store.list()

    @app.get("/api/projects/{project_id}")
    async def get_project(project_id: str):
        project, revision = _get_project(project_id)
        return JSONResponse(
            content=project_io.to_doc(project),
            headers={REVISION_HEADER: str(revision)},
        )

    @app.put("/api/projects/{project_id}")
    async def put_project(project_id: str, request: Request):
        doc = await _json_body(request)
        try:
            project = project_io.load_doc(doc)
        except ProjectValidationError as exc:
            raise _validation_error(exc)
        base = _base_revision(request)
        try:
            revision = store.put(project_id, project, base_revision=base)
        except StoreConflictError as exc:
            raise ApiError(409, "stale_revision", str(exc)) from exc
        except project_io.ProjectError as exc:
            raise ApiError(422, "validation_failed", str(exc)) from exc
        return JSONResponse(
            content={"revision": revision, "project": project_io.to_doc(project)},
            headers={REVISION_HEADER: str(revision)},
        )

    @app.delete("/api/projects/{project_id}")
    async def delete_project(project_id: str):
        try:
            store.delete(project_id)
        except StoreNotFoundError as exc:
            raise ApiError(404, "not_found", str(exc)) from exc
        with cache_lock:
            analysis_cache.pop(project_id, None)
        return Response(status_code=204)

    @app.post("/api/projects/{project_id}/analysis")
    async def analysis(project_id: str):
        return Response(
            content=_analysis_json(project_id), media_type="application/json"
        )

    @app.post("/api/projects/{project_id}/whatif")
    async def whatif(project_id: str, request: Request):
        project, _revision = _get_project(project_id)
        doc = await _json_body(request) or {}
        if not isinstance(doc, dict):
            raise ApiError(422, "validation_failed", "expected an object body", "")
        unknown = sorted(set(doc) - {"w", "p"})
        if unknown:
            raise ApiError(
                422, "validation_failed", "unknown override field", f"/{unknown[0]}"
            )
        w_raw = doc.get("w") or {}
        p_raw = doc.get("p") or {}
        if not isinstance(w_raw, dict) or not isinstance(p_raw, dict):
            raise ApiError(422, "validation_failed", "w and p must be objects", "")
        w = {}
        for name, value in w_raw.items():
            try:
                form = SynergyForm(name)
            except ValueError:
                raise ApiError(
                    422, "validation_failed", f"unknown form {name!r}", f"/w/{name}"
                )
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ApiError(
                    422, "validation_failed", "expected a number", f"/w/{name}"
                )
            w[form] = float(value)
        p = {}
        for slot_id, value in p_raw.items():
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ApiError(
                    422, "validation_failed", "expected a number", f"/p/{slot_id}"
                )
            p[slot_id] = float(value)
        try:
            result = engine.whatif(project, WhatIfOverrides(w=w, p=p))
        except OverrideError as exc:
            raise ApiError(422, "validation_failed", str(exc), exc.path) from exc
        except OptionSpaceError as exc:
            raise ApiError(413, "option_space_exceeded", str(exc)) from exc
        return Response(
            content=json.dumps(result.to_doc(), sort_keys=True),
            media_type="application/json",
        )

    @app.put("/api/projects/{project_id}/shortlist")
    async def put_shortlist(project_id: str, request: Request):
        project, revision = _get_project(project_id)
        base = _base_revision(request)
        if base is not None and base != revision:
            raise ApiError(
                409,
                "stale_revision",
                f"stale revision for {project_id!r}: expected {base}, "
                f"store is at {revision}",
            )
        doc = await _json_body(request)
        if not isinstance(doc, list) or not all(isinstance(i, str) for i in doc):
            raise ApiError(
                422, "validation_failed", "expected a list of candidate ids", ""
            )
        known = {
            c["id"]
            for c in json.loads(_analysis_json(project_id))["candidates"]
        }
        for index, candidate_id in enumerate(doc):
            if candidate_id not in known:
                raise ApiError(
                    422,
                    "validation_failed",
                    f"unknown candidate id {candidate_id!r}",
                    f"/{index}",
                )
        updated = project.with_shortlist(doc)
        try:
            new_revision = store.put(project_id, updated, base_revision=revision)
        except StoreConflictError as exc:
            raise ApiError(409, "stale_revision", str(exc)) from exc
        return JSONResponse(
            content={"revision": new_revision, "shortlist": list(doc)},
            headers={REVISION_HEADER: str(new_revision)},
        )

    @app.get("/api/projects/{project_id}/plot.svg")
    async def plot_svg(project_id: str):
        project, _revision = _get_project(project_id)
        result = engine.analyze(project)
        try:
            svg = report.scatter_svg(result)
        except report.ReportError as exc:
            raise ApiError(422, "validation_failed", str(exc)) from exc
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/api/projects/{project_id}/diagram.dot")
    async def diagram_dot(project_id: str, candidate: Optional[str] = None):
        project, _revision = _get_project(project_id)
        chosen = None
        if candidate is not None:
            result = engine.analyze(project)
            try:
                chosen = result.candidate_by_id(candidate)
            except engine.EngineError as exc:
                raise ApiError(422, "validation_failed", str(exc)) from exc
        dot = report.diagram_dot(project, chosen)
        return Response(content=dot, media_type="text/vnd.graphviz")

    return app
