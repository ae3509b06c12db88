"""Core graph model: node instances, edges, and topological ordering."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterator, Union

Literal = Union[str, int, float, bool]


@dataclass(frozen=True)
class Edge:
    """Reference to an upstream node's output slot."""

    upstream: str
    slot: int  # output slot index, >= 0


InputValue = Union[Literal, Edge]


@dataclass
class NodeInstance:
    class_type: str
    inputs: dict[str, InputValue] = field(default_factory=dict)


@dataclass
class WorkflowMeta:
    title: str | None = None
    description: str | None = None


@dataclass
class WorkflowGraph:
    """A workflow as a map of node-id -> node instance.

    Structural invariants (unique ids, resolvable edges, acyclicity) are
    established by the parsers and re-checked by validate(); the dataclass
    itself stays constructible in invalid states so that defect reports
    can be exercised.
    """

    nodes: dict[str, NodeInstance] = field(default_factory=dict)
    metadata: WorkflowMeta | None = None


class GraphCycleError(ValueError):
    """Raised when an operation requires an acyclic graph."""

    def __init__(self, members: list[str]):
        self.members = members
        super().__init__(f"cycle detected among nodes: {', '.join(members)}")


def iter_edges(graph: WorkflowGraph) -> Iterator[tuple[str, int, str, str]]:
    """Yield (upstream_id, slot, downstream_id, input_name) for every edge."""
    for node_id, node in graph.nodes.items():
        for name, value in node.inputs.items():
            if isinstance(value, Edge):
                yield value.upstream, value.slot, node_id, name


def node_sort_key(node_id: str) -> tuple:
    # Pure-digit ids (the common case in exported workflows) compare
    # numerically so "10" sorts after "9", everything else lexically.
    if node_id.isdigit():
        return (0, int(node_id), "")
    return (1, 0, node_id)


def topo_order(graph: WorkflowGraph) -> list[str]:
    """Deterministic topological order of node ids.

    Ready nodes are emitted in ascending node-id order (node_sort_key).
    Edges pointing at nodes outside the graph are ignored here; the
    validator reports those separately.

    Raises GraphCycleError naming the nodes left on a cycle.
    """
    indegree = {node_id: 0 for node_id in graph.nodes}
    downstream: dict[str, list[str]] = {node_id: [] for node_id in graph.nodes}
    for up, _slot, down, _name in iter_edges(graph):
        if up in indegree and up != down:
            downstream[up].append(down)
            indegree[down] += 1
        elif up == down:
            raise GraphCycleError([up])

    ready = [(node_sort_key(n), n) for n, d in indegree.items() if d == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        _, node_id = heapq.heappop(ready)
        order.append(node_id)
        for succ in downstream[node_id]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                heapq.heappush(ready, (node_sort_key(succ), succ))

    if len(order) != len(graph.nodes):
        stuck = sorted(
            (n for n, d in indegree.items() if d > 0), key=node_sort_key
        )
        raise GraphCycleError(stuck)
    return order
