"""Knowledge bases for nodes, models, and workflows."""

from .chunks import CodeChunk, chunk_code
from .docgen import DocGenError, fallback_doc, generate_doc, retrieve_chunks
from .model import (
    KbValidationError,
    ModelEntry,
    NodeDoc,
    NodeSpec,
    OutSpec,
    ParamSpec,
    WorkflowEntry,
)
from .store import IngestSummary, KnowledgeBase, NotFoundError, RetrievalItem

__all__ = [
    "CodeChunk",
    "DocGenError",
    "IngestSummary",
    "KbValidationError",
    "KnowledgeBase",
    "ModelEntry",
    "NodeDoc",
    "NodeSpec",
    "NotFoundError",
    "OutSpec",
    "ParamSpec",
    "RetrievalItem",
    "WorkflowEntry",
    "chunk_code",
    "fallback_doc",
    "generate_doc",
    "retrieve_chunks",
]
