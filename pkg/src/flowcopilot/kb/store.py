"""Directory-backed knowledge base with an in-memory index.

Layout: ``nodes/*.json``, ``models/*.json``, ``workflows/*.json``. The
store keeps everything in dicts keyed by class_type / id; lookups are
O(1). Writes are serialized behind a lock (single-writer contract);
reads are unlocked.
"""

from __future__ import annotations

import json
import logging
import re
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path
from shutil import unpack_archive
from typing import Iterable

from .model import KbValidationError, ModelEntry, NodeSpec, WorkflowEntry

logger = logging.getLogger(__name__)

_ARCHIVE_SUFFIXES = (".zip", ".tar", ".tar.gz", ".tgz")


class NotFoundError(KeyError):
    def __init__(self, kind: str, key: str):
        self.kind = kind
        self.key = key
        super().__init__(f"{kind} '{key}' not found")


@dataclass
class IngestSummary:
    nodes: int = 0
    models: int = 0
    workflows: int = 0
    rejects: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "models": self.models,
            "workflows": self.workflows,
            "rejects": list(self.rejects),
        }


@dataclass(frozen=True)
class RetrievalItem:
    """The unit the retrieval engine ranks: id, kind, text, popularity."""

    id: str
    kind: str  # workflow | node | model
    text: str
    popularity: int


def _safe_filename(key: str) -> str:
    return re.sub(r"[^0-9A-Za-z._-]+", "_", key) or "entry"


class KnowledgeBase:
    """Node registry plus model and workflow stores.

    Also the duck-typed registry consumed by ir.validate: ``get`` and
    ``class_types`` below.
    """

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        self.nodes: dict[str, NodeSpec] = {}
        self.models: dict[str, ModelEntry] = {}
        self.workflows: dict[str, WorkflowEntry] = {}
        self._write_lock = threading.Lock()
        if self.root is not None and self.root.exists():
            self._load()

    # -- registry interface -------------------------------------------------

    def get(self, class_type: str) -> NodeSpec | None:
        return self.nodes.get(class_type)

    def class_types(self) -> Iterable[str]:
        return self.nodes.keys()

    # -- lookups -------------------------------------------------------------

    def lookup_node(self, class_type: str) -> NodeSpec:
        try:
            return self.nodes[class_type]
        except KeyError:
            raise NotFoundError("node", class_type) from None

    def lookup_model(self, model_id: str) -> ModelEntry:
        try:
            return self.models[model_id]
        except KeyError:
            raise NotFoundError("model", model_id) from None

    def lookup_workflow(self, workflow_id: str) -> WorkflowEntry:
        try:
            return self.workflows[workflow_id]
        except KeyError:
            raise NotFoundError("workflow", workflow_id) from None

    def counts(self) -> dict[str, int]:
        return {
            "nodes": len(self.nodes),
            "models": len(self.models),
            "workflows": len(self.workflows),
        }

    # -- retrieval view ------------------------------------------------------

    def retrieval_items(self, kind: str) -> list[RetrievalItem]:
        if kind == "node":
            return [
                RetrievalItem(id=s.class_type, kind="node", text=s.description, popularity=s.stars)
                for s in self.nodes.values()
            ]
        if kind == "model":
            return [
                RetrievalItem(
                    id=m.id, kind="model", text=m.description or m.name,
                    popularity=m.downloads + m.upvotes,
                )
                for m in self.models.values()
            ]
        if kind == "workflow":
            return [
                RetrievalItem(
                    id=w.id, kind="workflow", text=w.description or w.title,
                    popularity=w.stars + w.downloads + w.upvotes,
                )
                for w in self.workflows.values()
            ]
        raise ValueError(f"unknown kind '{kind}'")

    def popularity_of(self, kind: str, key: str) -> int:
        if kind == "node":
            spec = self.nodes.get(key)
            return spec.stars if spec else 0
        if kind == "model":
            m = self.models.get(key)
            return m.downloads + m.upvotes if m else 0
        if kind == "workflow":
            w = self.workflows.get(key)
            return w.stars + w.downloads + w.upvotes if w else 0
        return 0

    # -- ingestion -----------------------------------------------------------

    def ingest(self, path: str | Path) -> IngestSummary:
        """Upsert entries from a directory or archive; idempotent.

        Counts report changed entries only, so re-ingesting identical
        data yields an all-zero summary. Invalid entries land in
        ``rejects`` with a reason and never abort the rest.
        """
        src = Path(path)
        if not src.exists():
            raise FileNotFoundError(f"ingest path does not exist: {src}")
        if src.is_file():
            if not src.name.endswith(_ARCHIVE_SUFFIXES):
                raise ValueError(f"not a directory or supported archive: {src}")
            with tempfile.TemporaryDirectory() as tmp:
                unpack_archive(str(src), tmp)
                return self.ingest(tmp)

        summary = IngestSummary()
        with self._write_lock:
            self._ingest_kind(src, "nodes", summary)
            self._ingest_kind(src, "models", summary)
            self._ingest_kind(src, "workflows", summary)
        return summary

    def _ingest_kind(self, src: Path, kind: str, summary: IngestSummary) -> None:
        kind_dir = src / kind
        if not kind_dir.is_dir():
            # archives may unpack into a single top-level directory
            nested = [d / kind for d in sorted(src.iterdir()) if d.is_dir() and (d / kind).is_dir()]
            if not nested:
                return
            kind_dir = nested[0]
        for file in sorted(kind_dir.glob("*.json")):
            try:
                obj = json.loads(file.read_text(encoding="utf-8"))
            except (OSError, json.JSONDecodeError) as exc:
                summary.rejects.append({"path": str(file), "reason": f"unreadable: {exc}"})
                continue
            try:
                if kind == "nodes":
                    entry = NodeSpec.from_dict(obj)
                    changed = self._upsert(self.nodes, entry.class_type, entry, "nodes")
                    summary.nodes += changed
                elif kind == "models":
                    entry = ModelEntry.from_dict(obj)
                    changed = self._upsert(self.models, entry.id, entry, "models")
                    summary.models += changed
                else:
                    entry = WorkflowEntry.from_dict(obj)
                    changed = self._upsert(self.workflows, entry.id, entry, "workflows")
                    summary.workflows += changed
            except KbValidationError as exc:
                summary.rejects.append({"path": str(file), "reason": exc.reason})

    def _upsert(self, index: dict, key: str, entry, kind_dir: str) -> int:
        existing = index.get(key)
        if existing is not None and existing.to_dict() == entry.to_dict():
            return 0
        index[key] = entry
        if self.root is not None:
            out_dir = self.root / kind_dir
            out_dir.mkdir(parents=True, exist_ok=True)
            out = out_dir / f"{_safe_filename(key)}.json"
            out.write_text(
                json.dumps(entry.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n",
                encoding="utf-8",
            )
        return 1

    def save_node(self, spec: NodeSpec) -> None:
        """Upsert a single node spec (used by doc generation)."""
        with self._write_lock:
            self._upsert(self.nodes, spec.class_type, spec, "nodes")

    def _load(self) -> None:
        assert self.root is not None
        loaders = (
            ("nodes", NodeSpec.from_dict, self.nodes, lambda e: e.class_type),
            ("models", ModelEntry.from_dict, self.models, lambda e: e.id),
            ("workflows", WorkflowEntry.from_dict, self.workflows, lambda e: e.id),
        )
        for kind, loader, index, key_of in loaders:
            kind_dir = self.root / kind
            if not kind_dir.is_dir():
                continue
            for file in sorted(kind_dir.glob("*.json")):
                try:
                    entry = loader(json.loads(file.read_text(encoding="utf-8")))
                except (OSError, json.JSONDecodeError, KbValidationError) as exc:
                    logger.warning("skipping %s: %s", file, exc)
                    continue
                index[key_of(entry)] = entry
