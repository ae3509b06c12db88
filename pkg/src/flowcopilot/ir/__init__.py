"""Workflow intermediate representation and its operations.

The IR is a typed DAG of node instances (WorkflowGraph). This package
parses and emits the two interchange formats (API-style JSON and the
assignment DSL), validates graphs against a node registry, orders them
topologically, and scores generated graphs against references.
"""

from .dsl import CodeParseError, parse_code, to_code
from .jsonio import WorkflowJsonError, graph_from_obj, graph_to_obj, parse_json, to_json
from .metrics import NodeMetrics, node_metrics
from .model import (
    Edge,
    GraphCycleError,
    NodeInstance,
    WorkflowGraph,
    WorkflowMeta,
    iter_edges,
    node_sort_key,
    topo_order,
)
from .validate import Issue, ValidationReport, find_near_match, validate

__all__ = [
    "CodeParseError",
    "Edge",
    "GraphCycleError",
    "Issue",
    "NodeInstance",
    "NodeMetrics",
    "ValidationReport",
    "WorkflowGraph",
    "WorkflowJsonError",
    "WorkflowMeta",
    "find_near_match",
    "graph_from_obj",
    "graph_to_obj",
    "iter_edges",
    "node_metrics",
    "node_sort_key",
    "parse_code",
    "parse_json",
    "to_code",
    "to_json",
    "topo_order",
    "validate",
]
