"""Knowledge-base entry types and their JSON (de)serialization.

Each entry keeps unrecognized manifest fields in ``extra`` so that
ingest -> persist round-trips preserve them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..ir import WorkflowGraph, graph_from_obj, graph_to_obj

MODEL_KINDS = ("checkpoint", "lora", "vae", "controlnet", "embedding", "other")


class KbValidationError(ValueError):
    """An entry failed structural validation; ``reason`` is reportable."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


def _require_str(obj: dict, key: str, entry: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise KbValidationError(f"missing {key}" if value is None else f"invalid {key} in {entry}")
    return value


def _opt_int(obj: dict, key: str) -> int:
    value = obj.get(key, 0)
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise KbValidationError(f"{key} must be a non-negative integer")
    return value


@dataclass
class ParamSpec:
    name: str
    type: str
    required: bool = True
    combo_options: list[str] | None = None
    default: Any = None


@dataclass
class OutSpec:
    name: str
    type: str


@dataclass
class NodeDoc:
    description: str
    input_docs: dict[str, str] = field(default_factory=dict)
    output_docs: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "input_docs": dict(self.input_docs),
            "output_docs": dict(self.output_docs),
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "NodeDoc":
        return cls(
            description=str(obj.get("description", "")),
            input_docs={str(k): str(v) for k, v in (obj.get("input_docs") or {}).items()},
            output_docs={str(k): str(v) for k, v in (obj.get("output_docs") or {}).items()},
        )


@dataclass
class NodeSpec:
    class_type: str
    display_name: str = ""
    category: str = ""
    inputs: list[ParamSpec] = field(default_factory=list)
    outputs: list[OutSpec] = field(default_factory=list)
    repo_url: str | None = None
    stars: int = 0
    doc: NodeDoc | None = None
    extra: dict = field(default_factory=dict)

    @property
    def description(self) -> str:
        """Text this entry is retrieved by: the doc if present, else a stub."""
        if self.doc is not None and self.doc.description:
            return self.doc.description
        bits = [self.display_name or self.class_type]
        if self.category:
            bits.append(f"({self.category})")
        return " ".join(bits)

    def to_dict(self) -> dict:
        obj = dict(self.extra)
        obj.update(
            {
                "class_type": self.class_type,
                "display_name": self.display_name,
                "category": self.category,
                "inputs": [
                    {
                        "name": p.name,
                        "type": p.type,
                        "required": p.required,
                        **({"combo_options": p.combo_options} if p.combo_options is not None else {}),
                        **({"default": p.default} if p.default is not None else {}),
                    }
                    for p in self.inputs
                ],
                "outputs": [{"name": o.name, "type": o.type} for o in self.outputs],
                "repo_url": self.repo_url,
                "stars": self.stars,
            }
        )
        if self.doc is not None:
            obj["doc"] = self.doc.to_dict()
        return obj

    @classmethod
    def from_dict(cls, obj: dict) -> "NodeSpec":
        if "class_type" not in obj:
            raise KbValidationError("missing class_type")
        class_type = _require_str(obj, "class_type", "node")
        known = {
            "class_type",
            "display_name",
            "category",
            "inputs",
            "outputs",
            "repo_url",
            "stars",
            "doc",
        }
        inputs = []
        seen = set()
        for raw in obj.get("inputs", []) or []:
            name = _require_str(raw, "name", f"input of {class_type}")
            if name in seen:
                raise KbValidationError(f"duplicate input name '{name}'")
            seen.add(name)
            inputs.append(
                ParamSpec(
                    name=name,
                    type=str(raw.get("type", "*")),
                    required=bool(raw.get("required", True)),
                    combo_options=(
                        [str(o) for o in raw["combo_options"]]
                        if raw.get("combo_options") is not None
                        else None
                    ),
                    default=raw.get("default"),
                )
            )
        outputs = [
            OutSpec(name=str(raw.get("name", f"out{i}")), type=str(raw.get("type", "*")))
            for i, raw in enumerate(obj.get("outputs", []) or [])
        ]
        doc = NodeDoc.from_dict(obj["doc"]) if isinstance(obj.get("doc"), dict) else None
        spec = cls(
            class_type=class_type,
            display_name=str(obj.get("display_name", "") or ""),
            category=str(obj.get("category", "") or ""),
            inputs=inputs,
            outputs=outputs,
            repo_url=obj.get("repo_url"),
            stars=_opt_int(obj, "stars"),
            doc=doc,
            extra={k: v for k, v in obj.items() if k not in known},
        )
        if doc is not None:
            check_doc_names(doc, spec)
        return spec


def check_doc_names(doc: NodeDoc, spec: NodeSpec) -> None:
    """Every documented name must exist on the owning spec."""
    input_names = {p.name for p in spec.inputs}
    output_names = {o.name for o in spec.outputs}
    for name in doc.input_docs:
        if name not in input_names:
            raise KbValidationError(f"doc covers unknown input '{name}'")
    for name in doc.output_docs:
        if name not in output_names:
            raise KbValidationError(f"doc covers unknown output '{name}'")


@dataclass
class ModelEntry:
    id: str
    name: str
    kind: str
    description: str = ""
    base_model: str | None = None
    downloads: int = 0
    upvotes: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        obj = dict(self.extra)
        obj.update(
            {
                "id": self.id,
                "name": self.name,
                "kind": self.kind,
                "description": self.description,
                "base_model": self.base_model,
                "downloads": self.downloads,
                "upvotes": self.upvotes,
            }
        )
        return obj

    @classmethod
    def from_dict(cls, obj: dict) -> "ModelEntry":
        if "id" not in obj:
            raise KbValidationError("missing id")
        kind = str(obj.get("kind", ""))
        if kind not in MODEL_KINDS:
            raise KbValidationError(f"invalid kind '{kind}'")
        known = {"id", "name", "kind", "description", "base_model", "downloads", "upvotes"}
        return cls(
            id=_require_str(obj, "id", "model"),
            name=str(obj.get("name", "") or ""),
            kind=kind,
            description=str(obj.get("description", "") or ""),
            base_model=obj.get("base_model"),
            downloads=_opt_int(obj, "downloads"),
            upvotes=_opt_int(obj, "upvotes"),
            extra={k: v for k, v in obj.items() if k not in known},
        )


@dataclass
class WorkflowEntry:
    id: str
    title: str = ""
    description: str = ""
    graph: WorkflowGraph = field(default_factory=WorkflowGraph)
    stars: int = 0
    downloads: int = 0
    upvotes: int = 0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        obj = dict(self.extra)
        obj.update(
            {
                "id": self.id,
                "title": self.title,
                "description": self.description,
                "stats": {
                    "stars": self.stars,
                    "downloads": self.downloads,
                    "upvotes": self.upvotes,
                },
                "graph": graph_to_obj(self.graph),
            }
        )
        return obj

    @classmethod
    def from_dict(cls, obj: dict) -> "WorkflowEntry":
        if "id" not in obj:
            raise KbValidationError("missing id")
        if "graph" not in obj:
            raise KbValidationError("missing graph")
        stats = obj.get("stats") or {}
        try:
            graph = graph_from_obj(obj["graph"])
        except ValueError as exc:
            raise KbValidationError(f"invalid graph: {exc}") from exc
        known = {"id", "title", "description", "stats", "graph"}
        return cls(
            id=_require_str(obj, "id", "workflow"),
            title=str(obj.get("title", "") or ""),
            description=str(obj.get("description", "") or ""),
            graph=graph,
            stars=_opt_int(stats, "stars"),
            downloads=_opt_int(stats, "downloads"),
            upvotes=_opt_int(stats, "upvotes"),
            extra={k: v for k, v in obj.items() if k not in known},
        )
