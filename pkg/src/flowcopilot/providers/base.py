"""Abstract provider interfaces shared by HTTP clients and offline fallbacks."""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field


class ProviderError(Exception):
    """Base class for provider failures; carries provider name and attempts."""

    def __init__(self, provider: str, message: str, attempts: int = 1):
        self.provider = provider
        self.attempts = attempts
        super().__init__(f"{provider}: {message} (after {attempts} attempt(s))")


class ProviderUnavailable(ProviderError):
    """Network failure or repeated server errors exhausted the retries."""


class ProviderResponseError(ProviderError):
    """The provider answered, but not with the contracted shape."""


class ChatProvider(ABC):
    """Chat completion. ``offline`` marks deterministic local fallbacks."""

    offline: bool = False

    @abstractmethod
    def complete(self, messages: list[dict], response_schema: dict | None = None) -> str:
        """messages: [{"role": system|user|assistant, "content": str}] -> reply text."""


class EmbeddingProvider(ABC):
    offline: bool = False
    dimension: int = 0

    @abstractmethod
    def embed(self, texts: list[str]) -> list[list[float]]:
        """One vector per text; all vectors share ``dimension``."""


class RerankProvider(ABC):
    offline: bool = False

    @abstractmethod
    def score(self, query: str, docs: list[str]) -> list[float]:
        """One relevance score per doc, in doc order."""


@dataclass
class RunStatus:
    status: str  # queued | running | done | failed
    outputs: list[str] = field(default_factory=list)

    @property
    def terminal(self) -> bool:
        return self.status in ("done", "failed")


class WorkflowExecutor(ABC):
    offline: bool = False

    @abstractmethod
    def submit(self, workflow: dict) -> str:
        """Submit an API-format workflow object; returns a run handle."""

    @abstractmethod
    def poll(self, handle: str) -> RunStatus:
        """Status of a run; stable once terminal."""
