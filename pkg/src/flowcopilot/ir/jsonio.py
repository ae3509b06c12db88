"""API-style workflow JSON: a flat map of node-id -> {class_type, inputs}.

Edges ride inside ``inputs`` as two-element ``[upstream_id, slot]``
arrays; every other scalar is a literal. Optional graph metadata is
carried under the reserved top-level ``"_meta"`` key, which is not a
valid node id.
"""

from __future__ import annotations

import json
from typing import Any

from .model import Edge, GraphCycleError, NodeInstance, WorkflowGraph, WorkflowMeta, topo_order

META_KEY = "_meta"


class WorkflowJsonError(ValueError):
    """Workflow JSON rejected; ``kind`` and ``location`` say why and where."""

    def __init__(self, kind: str, detail: str, location: str = ""):
        self.kind = kind  # malformed | duplicate-id | unknown-ref | cycle | invalid-value
        self.location = location
        where = f" at {location}" if location else ""
        super().__init__(f"{kind}{where}: {detail}")


def _reject_duplicate_keys(pairs: list[tuple[str, Any]]) -> dict:
    obj: dict = {}
    for key, value in pairs:
        if key in obj:
            raise WorkflowJsonError("duplicate-id", f"duplicate object key '{key}'", key)
        obj[key] = value
    return obj


def _decode_input(node_id: str, name: str, value: Any) -> Any:
    loc = f"node '{node_id}' input '{name}'"
    if (
        isinstance(value, list)
        and len(value) == 2
        and isinstance(value[0], str)
        and isinstance(value[1], int)
        and not isinstance(value[1], bool)
    ):
        if value[1] < 0:
            raise WorkflowJsonError("invalid-value", f"negative output slot {value[1]}", loc)
        return Edge(upstream=value[0], slot=value[1])
    if isinstance(value, (str, int, float, bool)):
        return value
    raise WorkflowJsonError(
        "invalid-value",
        f"unsupported input value {value!r} (expected literal or [id, slot])",
        loc,
    )


def graph_from_obj(obj: Any) -> WorkflowGraph:
    """Build a graph from an already-decoded JSON object."""
    if not isinstance(obj, dict):
        raise WorkflowJsonError("malformed", "top level must be an object")

    metadata = None
    nodes: dict[str, NodeInstance] = {}
    for node_id, raw in obj.items():
        if node_id == META_KEY:
            if not isinstance(raw, dict):
                raise WorkflowJsonError("malformed", "_meta must be an object", META_KEY)
            metadata = WorkflowMeta(
                title=raw.get("title"), description=raw.get("description")
            )
            continue
        if node_id == "":
            raise WorkflowJsonError("malformed", "empty node id")
        if not isinstance(raw, dict):
            raise WorkflowJsonError("malformed", "node must be an object", f"node '{node_id}'")
        class_type = raw.get("class_type")
        if not isinstance(class_type, str) or not class_type:
            raise WorkflowJsonError(
                "malformed", "missing or empty class_type", f"node '{node_id}'"
            )
        raw_inputs = raw.get("inputs", {})
        if not isinstance(raw_inputs, dict):
            raise WorkflowJsonError("malformed", "inputs must be an object", f"node '{node_id}'")
        inputs = {
            name: _decode_input(node_id, name, value) for name, value in raw_inputs.items()
        }
        nodes[node_id] = NodeInstance(class_type=class_type, inputs=inputs)

    graph = WorkflowGraph(nodes=nodes, metadata=metadata)

    for node_id, node in nodes.items():
        for name, value in node.inputs.items():
            if isinstance(value, Edge) and value.upstream not in nodes:
                raise WorkflowJsonError(
                    "unknown-ref",
                    f"edge references unknown node '{value.upstream}'",
                    f"node '{node_id}' input '{name}'",
                )
    try:
        topo_order(graph)
    except GraphCycleError as exc:
        raise WorkflowJsonError(
            "cycle", str(exc), f"nodes {', '.join(exc.members)}"
        ) from exc
    return graph


def parse_json(data: bytes | str) -> WorkflowGraph:
    """Parse workflow JSON text into a graph, enforcing all invariants."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise WorkflowJsonError("malformed", f"not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data, object_pairs_hook=_reject_duplicate_keys)
    except WorkflowJsonError:
        raise
    except json.JSONDecodeError as exc:
        raise WorkflowJsonError(
            "malformed", exc.msg, f"line {exc.lineno} column {exc.colno}"
        ) from exc
    return graph_from_obj(obj)


def graph_to_obj(graph: WorkflowGraph) -> dict:
    obj: dict[str, Any] = {}
    for node_id, node in graph.nodes.items():
        inputs: dict[str, Any] = {}
        for name, value in node.inputs.items():
            if isinstance(value, Edge):
                inputs[name] = [value.upstream, value.slot]
            else:
                inputs[name] = value
        obj[node_id] = {"class_type": node.class_type, "inputs": inputs}
    if graph.metadata is not None:
        meta = {}
        if graph.metadata.title is not None:
            meta["title"] = graph.metadata.title
        if graph.metadata.description is not None:
            meta["description"] = graph.metadata.description
        obj[META_KEY] = meta
    return obj


def to_json(graph: WorkflowGraph) -> bytes:
    """Canonical serialization: sorted keys, 2-space indent, UTF-8."""
    return json.dumps(
        graph_to_obj(graph), sort_keys=True, indent=2, ensure_ascii=False
    ).encode("utf-8")
