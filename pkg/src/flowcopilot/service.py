"""HTTP surface of the engine, consumed by the chat UI and scripts.

Every endpoint is a stateless wrapper over the module operations (the
CLI calls the same functions), so recorded request sequences replay to
identical responses in offline mode. Errors come back as
``{"error": {"kind": ..., "detail": ...}}``.
"""

from __future__ import annotations

import logging
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .agents import Assistant, SessionStore
from .config import Deps
from .gridsearch import GridError, ParamGridSpec, run_sweep
from .ir import (
    CodeParseError,
    GraphCycleError,
    WorkflowGraph,
    WorkflowJsonError,
    graph_from_obj,
    parse_code,
    parse_json,
    to_code,
    to_json,
    validate,
)
from .kb import NotFoundError
from .retrieval import EmptyKbError, recommend

logger = logging.getLogger(__name__)


class ApiError(Exception):
    def __init__(self, status: int, kind: str, detail: str):
        self.status = status
        self.kind = kind
        self.detail = detail
        super().__init__(detail)


class ChatRequest(BaseModel):
    session_id: str
    message: str


class RecommendRequest(BaseModel):
    query: str
    context: str | None = None


class ValidateRequest(BaseModel):
    format: Literal["json", "code"] = "json"
    payload: str


class ConvertRequest(BaseModel):
    from_format: Literal["json", "code"] = Field(alias="from")
    to_format: Literal["json", "code"] = Field(alias="to")
    payload: str


class ParamSearchRequest(BaseModel):
    workflow: dict | str
    grid: dict
    parallelism: int = 4


class FeedbackRequest(BaseModel):
    accepted: bool
    session_id: str | None = None
    item_ref: str | None = None
    kind: str | None = None


def _load_graph(format: str, payload: str, registry) -> WorkflowGraph:
    try:
        if format == "code":
            return parse_code(payload, registry)
        return parse_json(payload)
    except (WorkflowJsonError, CodeParseError) as exc:
        raise ApiError(400, "invalid-workflow", str(exc)) from exc


def create_app(deps: Deps) -> FastAPI:
    app = FastAPI(title="flowcopilot", version="0.1.0")
    sessions = SessionStore(
        ttl=deps.config.session_ttl, max_messages=deps.config.session_max_messages
    )
    assistant = Assistant(deps)

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"kind": exc.kind, "detail": exc.detail}},
        )

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "invalid-request", "detail": str(exc.errors())}},
        )

    @app.get("/healthz")
    def healthz() -> dict:
        counts = deps.kb.counts()
        counts["offline"] = deps.providers.offline
        return counts

    @app.post("/api/chat")
    def chat(req: ChatRequest) -> dict:
        session = sessions.get_or_create(req.session_id)
        reply = assistant.handle(req.message, session)
        return reply.to_dict()

    @app.post("/api/recommend/{kind}")
    def recommend_endpoint(kind: str, req: RecommendRequest) -> dict:
        singular = {"workflows": "workflow", "nodes": "node", "models": "model"}.get(kind)
        if singular is None:
            raise ApiError(404, "unknown-kind", f"no recommender for '{kind}'")
        try:
            if singular == "workflow":
                from .retrieval import expand_intent
                from .wfgen import propose

                intent = expand_intent(req.query, context=req.context, llm=deps.providers.chat)
                cards = [c.to_dict() for c in propose(intent, deps)]
            elif singular == "node":
                reply = assistant.recommend_nodes(req.query, sessions.get_or_create("-rec-"))
                cards = [a.to_dict() for a in reply.attachments]
            else:
                reply = assistant.recommend_models(req.query, sessions.get_or_create("-rec-"))
                cards = [a.to_dict() for a in reply.attachments]
        except EmptyKbError as exc:
            raise ApiError(409, "empty-kb", str(exc)) from exc
        return {"cards": cards}

    @app.post("/api/workflow/validate")
    def validate_endpoint(req: ValidateRequest) -> dict:
        graph = _load_graph(req.format, req.payload, deps.registry)
        return validate(graph, deps.registry).to_dict()

    @app.post("/api/workflow/convert")
    def convert_endpoint(req: ConvertRequest) -> dict:
        graph = _load_graph(req.from_format, req.payload, deps.registry)
        try:
            if req.to_format == "code":
                out = to_code(graph, deps.registry)
            else:
                out = to_json(graph).decode("utf-8")
        except GraphCycleError as exc:
            raise ApiError(400, "cycle", str(exc)) from exc
        return {"payload": out}

    @app.post("/api/paramsearch")
    def paramsearch_endpoint(req: ParamSearchRequest) -> dict:
        if isinstance(req.workflow, str):
            graph = _load_graph("json", req.workflow, deps.registry)
        else:
            try:
                graph = graph_from_obj(req.workflow)
            except WorkflowJsonError as exc:
                raise ApiError(400, "invalid-workflow", str(exc)) from exc
        try:
            grid = ParamGridSpec.from_dict(req.grid)
            result = run_sweep(
                graph, grid, deps.providers.executor, parallelism=req.parallelism
            )
        except GridError as exc:
            raise ApiError(400, "invalid-grid", str(exc)) from exc
        return result.to_dict()

    @app.get("/api/nodes/{class_type}")
    def node_endpoint(class_type: str) -> dict:
        try:
            spec = deps.kb.lookup_node(class_type)
        except NotFoundError as exc:
            raise ApiError(404, "not-found", str(exc)) from exc
        return spec.to_dict()

    @app.post("/api/feedback")
    def feedback_endpoint(req: FeedbackRequest) -> dict:
        # Accept/reject signals are recorded in the log only; no learning
        # loop consumes them.
        logger.info(
            "feedback accepted=%s kind=%s ref=%s", req.accepted, req.kind, req.item_ref
        )
        return {"ok": True}

    return app


def serve(deps: Deps, host: str = "127.0.0.1", port: int | None = None) -> None:
    import uvicorn

    uvicorn.run(create_app(deps), host=host, port=port or deps.config.port)
