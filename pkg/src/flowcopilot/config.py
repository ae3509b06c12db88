"""Environment and file configuration, and provider/dependency wiring.

Config files are YAML or JSON with nested sections, e.g.::

    retrieval:
      w_semantic: 0.7
      w_lexical: 0.3
      recall_k: 30
      final_k: 3

``COPILOT_OFFLINE=1`` forces every provider to its deterministic
offline fallback regardless of configured endpoints.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .kb import KnowledgeBase
from .providers import (
    ChatProvider,
    EmbeddingProvider,
    HttpChat,
    HttpEmbed,
    HttpExecutor,
    HttpRerank,
    NgramEmbed,
    OfflineExecutor,
    PassthroughRerank,
    RerankProvider,
    ScriptedChat,
    WorkflowExecutor,
)
from .retrieval import RetrievalConfig

ENV_OFFLINE = "COPILOT_OFFLINE"
ENV_KB_DIR = "COPILOT_KB_DIR"
ENV_PORT = "COPILOT_PORT"


@dataclass
class AppConfig:
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    kb_dir: str | None = None
    port: int = 8040
    offline: bool = False
    chunk_size: int = 1200
    overlap: int = 200
    top_m: int = 5
    session_ttl: float = 3600.0
    session_max_messages: int = 40


def load_config(path: str | Path | None = None, env: dict | None = None) -> AppConfig:
    env = os.environ if env is None else env
    data: dict = {}
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
        data = (json.loads(text) if str(path).endswith(".json") else yaml.safe_load(text)) or {}

    retrieval_raw = data.get("retrieval", {}) or {}
    retrieval = RetrievalConfig(
        w_semantic=float(retrieval_raw.get("w_semantic", 0.7)),
        w_lexical=float(retrieval_raw.get("w_lexical", 0.3)),
        recall_k=int(retrieval_raw.get("recall_k", 30)),
        final_k=int(retrieval_raw.get("final_k", 3)),
        popularity_mode=str(retrieval_raw.get("popularity_mode", "reorder")),
    )
    kb_section = data.get("kb", {}) or {}
    return AppConfig(
        retrieval=retrieval,
        kb_dir=env.get(ENV_KB_DIR) or data.get("kb_dir"),
        port=int(env.get(ENV_PORT) or data.get("port") or 8040),
        offline=env.get(ENV_OFFLINE) == "1" or bool(data.get("offline", False)),
        chunk_size=int(kb_section.get("chunk_size", 1200)),
        overlap=int(kb_section.get("overlap", 200)),
        top_m=int(kb_section.get("top_m", 5)),
    )


@dataclass
class Providers:
    chat: ChatProvider | None
    emb: EmbeddingProvider
    reranker: RerankProvider
    executor: WorkflowExecutor
    offline: bool


def build_providers(config: AppConfig, env: dict | None = None) -> Providers:
    """Wire HTTP providers where endpoints are configured, fallbacks otherwise."""
    env = os.environ if env is None else env
    offline = config.offline or env.get(ENV_OFFLINE) == "1"
    emb: EmbeddingProvider = NgramEmbed()
    if offline:
        return Providers(
            chat=ScriptedChat(),
            emb=emb,
            reranker=PassthroughRerank(emb, config.retrieval),
            executor=OfflineExecutor(),
            offline=True,
        )
    chat_url = env.get("COPILOT_CHAT_URL")
    embed_url = env.get("COPILOT_EMBED_URL")
    rerank_url = env.get("COPILOT_RERANK_URL")
    exec_url = env.get("COPILOT_EXEC_URL")
    chat = HttpChat(chat_url, env.get("COPILOT_CHAT_KEY")) if chat_url else ScriptedChat()
    if embed_url:
        emb = HttpEmbed(embed_url, env.get("COPILOT_EMBED_KEY"))
    reranker = (
        HttpRerank(rerank_url, env.get("COPILOT_RERANK_KEY"))
        if rerank_url
        else PassthroughRerank(emb, config.retrieval)
    )
    executor = HttpExecutor(exec_url) if exec_url else OfflineExecutor()
    return Providers(chat=chat, emb=emb, reranker=reranker, executor=executor, offline=False)


@dataclass
class Deps:
    """Everything the agents, workers, and service need to operate."""

    kb: KnowledgeBase
    providers: Providers
    config: AppConfig

    @property
    def registry(self) -> KnowledgeBase:
        return self.kb


def build_deps(
    kb_dir: str | Path | None = None,
    config: AppConfig | None = None,
    offline: bool | None = None,
    env: dict | None = None,
) -> Deps:
    config = config or load_config(env=env)
    if kb_dir is not None:
        config.kb_dir = str(kb_dir)
    if offline is not None:
        config.offline = offline
    kb = KnowledgeBase(config.kb_dir) if config.kb_dir else KnowledgeBase()
    return Deps(kb=kb, providers=build_providers(config, env=env), config=config)
