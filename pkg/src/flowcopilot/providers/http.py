"""HTTP provider clients with bounded retry and exponential backoff.

All bodies are JSON. Transient failures (network errors, 5xx) are
retried up to ``retries`` attempts with backoff base * 2^i sleeps; 4xx
and malformed bodies fail immediately with a typed error. A custom
``transport`` (e.g. httpx.MockTransport) can be injected for tests.
"""

from __future__ import annotations

import logging
import time
from typing import Any, Callable

import httpx

from .base import (
    ChatProvider,
    EmbeddingProvider,
    ProviderResponseError,
    ProviderUnavailable,
    RerankProvider,
    RunStatus,
    WorkflowExecutor,
)

logger = logging.getLogger(__name__)

DEFAULT_TIMEOUT = 30.0
DEFAULT_RETRIES = 3
DEFAULT_BACKOFF = 0.5


class _JsonClient:
    def __init__(
        self,
        name: str,
        base_url: str,
        api_key: str | None = None,
        timeout: float = DEFAULT_TIMEOUT,
        retries: int = DEFAULT_RETRIES,
        backoff: float = DEFAULT_BACKOFF,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.name = name
        self.retries = retries
        self.backoff = backoff
        self._sleep = sleep
        headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        self._client = httpx.Client(
            base_url=base_url, headers=headers, timeout=timeout, transport=transport
        )

    def request(self, method: str, path: str, payload: Any | None = None) -> Any:
        last_error = "unknown"
        for attempt in range(1, self.retries + 1):
            try:
                resp = self._client.request(method, path, json=payload)
            except httpx.HTTPError as exc:
                last_error = str(exc) or type(exc).__name__
                logger.warning("%s attempt %d failed: %s", self.name, attempt, last_error)
            else:
                if resp.status_code >= 500:
                    last_error = f"server error {resp.status_code}"
                    logger.warning("%s attempt %d: %s", self.name, attempt, last_error)
                elif resp.status_code >= 300:
                    raise ProviderResponseError(
                        self.name, f"unexpected status {resp.status_code}", attempt
                    )
                else:
                    try:
                        return resp.json()
                    except ValueError as exc:
                        raise ProviderResponseError(
                            self.name, f"non-JSON response: {exc}", attempt
                        ) from exc
            if attempt < self.retries:
                self._sleep(self.backoff * (2 ** (attempt - 1)))
        raise ProviderUnavailable(self.name, last_error, self.retries)

    def post(self, path: str, payload: Any) -> Any:
        return self.request("POST", path, payload)


class HttpChat(ChatProvider):
    """POST {messages, response_schema?} -> {content: str}."""

    def __init__(self, url: str, api_key: str | None = None, **kwargs):
        self._client = _JsonClient("chat", url, api_key, **kwargs)

    def complete(self, messages: list[dict], response_schema: dict | None = None) -> str:
        payload: dict = {"messages": messages}
        if response_schema is not None:
            payload["response_schema"] = response_schema
        body = self._client.post("", payload)
        content = body.get("content") if isinstance(body, dict) else None
        if not isinstance(content, str):
            raise ProviderResponseError("chat", "response missing string 'content'")
        return content


class HttpEmbed(EmbeddingProvider):
    """POST {texts} -> {vectors: [[float]]}."""

    def __init__(self, url: str, api_key: str | None = None, **kwargs):
        self._client = _JsonClient("embed", url, api_key, **kwargs)

    def embed(self, texts: list[str]) -> list[list[float]]:
        body = self._client.post("", {"texts": texts})
        vectors = body.get("vectors") if isinstance(body, dict) else None
        if not isinstance(vectors, list) or len(vectors) != len(texts):
            raise ProviderResponseError("embed", "response must carry one vector per text")
        vectors = [[float(x) for x in v] for v in vectors]
        if vectors:
            dims = {len(v) for v in vectors}
            if len(dims) != 1:
                raise ProviderResponseError("embed", f"inconsistent vector dimensions {dims}")
            self.dimension = dims.pop()
        return vectors


class HttpRerank(RerankProvider):
    """POST {query, docs} -> {scores: [float]}."""

    def __init__(self, url: str, api_key: str | None = None, **kwargs):
        self._client = _JsonClient("rerank", url, api_key, **kwargs)

    def score(self, query: str, docs: list[str]) -> list[float]:
        body = self._client.post("", {"query": query, "docs": docs})
        scores = body.get("scores") if isinstance(body, dict) else None
        if not isinstance(scores, list) or len(scores) != len(docs):
            raise ProviderResponseError("rerank", "response must carry one score per doc")
        return [float(s) for s in scores]


class HttpExecutor(WorkflowExecutor):
    """Client for a ComfyUI-compatible prompt-submission API.

    submit -> POST /prompt {"prompt": workflow}; poll -> GET
    /history/{id}, empty until the run finishes. Excluded from the
    hermetic test suite except via mock transports.
    """

    def __init__(self, url: str, **kwargs):
        self._client = _JsonClient("executor", url, None, **kwargs)

    def submit(self, workflow: dict) -> str:
        body = self._client.post("/prompt", {"prompt": workflow})
        handle = body.get("prompt_id") if isinstance(body, dict) else None
        if not isinstance(handle, str):
            raise ProviderResponseError("executor", "response missing 'prompt_id'")
        return handle

    def poll(self, handle: str) -> RunStatus:
        body = self._client.request("GET", f"/history/{handle}")
        if not isinstance(body, dict) or handle not in body:
            return RunStatus(status="running")
        record = body[handle]
        status_obj = record.get("status") or {}
        outputs = []
        for node_outputs in (record.get("outputs") or {}).values():
            for items in node_outputs.values():
                if isinstance(items, list):
                    for item in items:
                        if isinstance(item, dict) and "filename" in item:
                            outputs.append(str(item["filename"]))
        if status_obj.get("status_str") == "error":
            return RunStatus(status="failed", outputs=outputs)
        return RunStatus(status="done", outputs=outputs)
