"""Node-selection metrics between a generated and a reference graph."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .model import WorkflowGraph


@dataclass(frozen=True)
class NodeMetrics:
    precision: float
    recall: float
    f1: float
    gen_count: int
    ref_count: int

    def to_dict(self) -> dict:
        return {
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "gen_count": self.gen_count,
            "ref_count": self.ref_count,
        }


def node_metrics(generated: WorkflowGraph, reference: WorkflowGraph) -> NodeMetrics:
    """Precision/recall/F1 over class_type multisets.

    Duplicated node classes count once per occurrence (multiset
    intersection), so a graph using two samplers is not rewarded for
    matching a reference that uses one.
    """
    gen = Counter(n.class_type for n in generated.nodes.values())
    ref = Counter(n.class_type for n in reference.nodes.values())
    matched = sum((gen & ref).values())
    gen_total = sum(gen.values())
    ref_total = sum(ref.values())
    precision = matched / gen_total if gen_total else 0.0
    recall = matched / ref_total if ref_total else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return NodeMetrics(
        precision=precision,
        recall=recall,
        f1=f1,
        gen_count=gen_total,
        ref_count=ref_total,
    )
