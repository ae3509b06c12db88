"""Provider interfaces, HTTP clients, and deterministic offline fallbacks."""

from .base import (
    ChatProvider,
    EmbeddingProvider,
    ProviderError,
    ProviderResponseError,
    ProviderUnavailable,
    RerankProvider,
    RunStatus,
    WorkflowExecutor,
)
from .http import HttpChat, HttpEmbed, HttpExecutor, HttpRerank
from .offline import NgramEmbed, OfflineExecutor, PassthroughRerank, ScriptedChat, SequenceChat

__all__ = [
    "ChatProvider",
    "EmbeddingProvider",
    "HttpChat",
    "HttpEmbed",
    "HttpExecutor",
    "HttpRerank",
    "NgramEmbed",
    "OfflineExecutor",
    "PassthroughRerank",
    "ProviderError",
    "ProviderResponseError",
    "ProviderUnavailable",
    "RerankProvider",
    "RunStatus",
    "ScriptedChat",
    "SequenceChat",
    "WorkflowExecutor",
]
