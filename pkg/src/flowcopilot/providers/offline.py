"""Deterministic offline fallbacks: every provider role without a network.

These are pure functions of their inputs, which keeps the whole engine
testable hermetically (COPILOT_OFFLINE=1 wires them in everywhere).
"""

from __future__ import annotations

import hashlib
import itertools

from .. import kernels
from .base import ChatProvider, EmbeddingProvider, RerankProvider, RunStatus, WorkflowExecutor


def _key(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class ScriptedChat(ChatProvider):
    """Replays a response table keyed by the hash of the last user message.

    ``script`` maps plain message texts to replies (hashed internally).
    A key miss yields a deterministic default. Instances built to stand
    in for a real provider in tests may pass ``offline=False``.
    """

    def __init__(self, script: dict[str, str] | None = None, offline: bool = True):
        self._table = {_key(msg): reply for msg, reply in (script or {}).items()}
        self.offline = offline
        self.calls = 0

    def complete(self, messages: list[dict], response_schema: dict | None = None) -> str:
        self.calls += 1
        last_user = ""
        for message in reversed(messages):
            if message.get("role") == "user":
                last_user = str(message.get("content", ""))
                break
        reply = self._table.get(_key(last_user))
        if reply is not None:
            return reply
        return (
            "I am running without a language-model backend, so here is a "
            f"canned reply (request digest {_key(last_user)[:12]})."
        )


class SequenceChat(ChatProvider):
    """Returns scripted replies in order; repeats the last one when exhausted.

    Handy for retry-path tests (garbage first, valid second).
    """

    def __init__(self, replies: list[str], offline: bool = False):
        if not replies:
            raise ValueError("SequenceChat needs at least one reply")
        self._replies = list(replies)
        self._iter = itertools.count()
        self.offline = offline

    def complete(self, messages: list[dict], response_schema: dict | None = None) -> str:
        i = next(self._iter)
        return self._replies[min(i, len(self._replies) - 1)]


class NgramEmbed(EmbeddingProvider):
    """Hashed character-trigram embedding (see kernels for the definition)."""

    offline = True
    dimension = kernels.DIM

    def embed(self, texts: list[str]) -> list[list[float]]:
        return kernels.embed_batch(texts)


class PassthroughRerank(RerankProvider):
    """Scores each doc with the locally computed overall retrieval score.

    Order-preserving with respect to the recall stage, which makes it
    the identity fallback for the rerank step.
    """

    offline = True

    def __init__(self, emb: EmbeddingProvider | None = None, config=None):
        self._emb = emb if emb is not None else NgramEmbed()
        self._config = config

    def score(self, query: str, docs: list[str]) -> list[float]:
        # Imported here: retrieval depends on providers.base, so a module
        # level import would be circular.
        from ..retrieval import combined_score, lexical_sim

        if self._config is None:
            from ..retrieval import RetrievalConfig

            self._config = RetrievalConfig()
        vectors = self._emb.embed([query] + list(docs))
        sims = kernels.cosine01_batch(vectors[0], vectors[1:])
        return [
            combined_score(sim_s, lexical_sim(query, doc), self._config)
            for sim_s, doc in zip(sims, docs)
        ]


class OfflineExecutor(WorkflowExecutor):
    """Pretends every submitted workflow completes immediately."""

    offline = True

    def __init__(self):
        self._runs: dict[str, RunStatus] = {}
        self._counter = itertools.count(1)

    def submit(self, workflow: dict) -> str:
        handle = f"run-{next(self._counter)}"
        self._runs[handle] = RunStatus(
            status="done", outputs=[f"artifact://{handle}/image0.png"]
        )
        return handle

    def poll(self, handle: str) -> RunStatus:
        return self._runs.get(handle, RunStatus(status="failed"))
