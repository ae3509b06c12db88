"""Workflow worker: retrieve candidates, synthesize from scratch, evaluate.

Retrieved candidates come from the recommendation pipeline over the
workflow KB; synthesis prompts a chat provider with recalled node specs
and code exemplars and parses the reply as DSL (one repair retry with
the parser error fed back). Every candidate is validated and carries
install hints for missing nodes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .config import Deps
from .ir import (
    CodeParseError,
    ValidationReport,
    WorkflowGraph,
    graph_to_obj,
    node_metrics,
    parse_code,
    to_code,
    validate,
)
from .providers.base import ProviderError
from .retrieval import Intent, expand_intent, recall, recommend

logger = logging.getLogger(__name__)


class SynthesisError(RuntimeError):
    """Synthesis produced nothing parseable after the repair retry."""


@dataclass
class CandidateWorkflow:
    source: str  # retrieved | synthesized
    graph: WorkflowGraph
    code: str
    report: ValidationReport
    entry_ref: str | None = None
    title: str = ""
    missing_nodes: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "entry_ref": self.entry_ref,
            "title": self.title,
            "graph": graph_to_obj(self.graph),
            "code": self.code,
            "report": self.report.to_dict(),
            "missing_nodes": list(self.missing_nodes),
            "node_count": len(self.graph.nodes),
        }


def _missing_nodes(graph: WorkflowGraph, report: ValidationReport) -> list[dict]:
    missing: dict[str, dict] = {}
    for issue in report.issues:
        if issue.kind != "missing-node" or issue.node_id is None:
            continue
        class_type = graph.nodes[issue.node_id].class_type
        missing.setdefault(
            class_type, {"class_type": class_type, "repo_url": issue.install_hint}
        )
    return sorted(missing.values(), key=lambda m: m["class_type"])


def _candidate(graph: WorkflowGraph, deps: Deps, source: str,
               entry_ref: str | None = None, title: str = "") -> CandidateWorkflow:
    report = validate(graph, deps.registry)
    return CandidateWorkflow(
        source=source,
        graph=graph,
        code=to_code(graph, deps.registry),
        report=report,
        entry_ref=entry_ref,
        title=title,
        missing_nodes=_missing_nodes(graph, report),
    )


def propose(intent: Intent, deps: Deps, synthesize_extra: bool = False) -> list[CandidateWorkflow]:
    """Top retrieved workflow candidates, each validated and transpiled.

    Synthesis is off by default; with ``synthesize_extra`` a from-scratch
    candidate is appended after the retrieved ones (failures are logged
    and skipped, retrieval results still stand).
    """
    ranked = recommend(
        intent,
        "workflow",
        deps.kb,
        deps.config.retrieval,
        deps.providers.chat,
        deps.providers.emb,
        deps.providers.reranker,
    )
    candidates = []
    for cand in ranked:
        entry = deps.kb.lookup_workflow(cand.id)
        candidates.append(
            _candidate(entry.graph, deps, "retrieved", entry_ref=entry.id, title=entry.title)
        )
    if synthesize_extra:
        try:
            candidates.append(synthesize(intent, deps))
        except (SynthesisError, ProviderError) as exc:
            logger.warning("synthesis skipped: %s", exc)
    return candidates


def _exemplar_prompt(intent: Intent, deps: Deps, node_count: int = 10,
                     workflow_count: int = 2) -> str:
    cfg = deps.config.retrieval
    node_lines = []
    try:
        recalled = recall(intent, "node", deps.kb, cfg, deps.providers.emb)
        for cand in recalled[:node_count]:
            spec = deps.kb.get(cand.id)
            if spec is None:
                continue
            ins = ", ".join(f"{p.name}: {p.type}" for p in spec.inputs)
            outs = ", ".join(o.type for o in spec.outputs)
            node_lines.append(f"- {spec.class_type}({ins}) -> [{outs}]")
    except ValueError:
        pass
    exemplars = []
    try:
        recalled_wf = recall(intent, "workflow", deps.kb, cfg, deps.providers.emb)
        for cand in recalled_wf[:workflow_count]:
            entry = deps.kb.lookup_workflow(cand.id)
            exemplars.append(f"# {entry.title or entry.id}\n{to_code(entry.graph, deps.registry)}")
    except ValueError:
        pass
    return (
        "Write a node workflow as assignment-style code, one statement per "
        "node, e.g. `var = ClassName(arg=value, other=var2)`. Use only the "
        "node classes listed below. Reply with code only.\n\n"
        f"Available nodes:\n{chr(10).join(node_lines) or '(none)'}\n\n"
        f"Example workflows:\n{chr(10).join(exemplars) or '(none)'}\n\n"
        f"Task: {intent.expanded}"
    )


def _strip_fences(text: str) -> str:
    lines = [l for l in text.strip().splitlines() if not l.strip().startswith("```")]
    return "\n".join(lines).strip() + "\n"


def synthesize(intent: Intent, deps: Deps) -> CandidateWorkflow:
    """Generate a workflow from scratch; one repair retry on parse failure."""
    llm = deps.providers.chat
    if llm is None:
        raise SynthesisError("no chat provider configured")
    prompt = _exemplar_prompt(intent, deps)
    reply = llm.complete([{"role": "user", "content": prompt}])
    try:
        graph = parse_code(_strip_fences(reply), deps.registry)
    except CodeParseError as first_error:
        repair = (
            f"{prompt}\n\nYour previous code failed to parse: {first_error}\n"
            "Fix it and reply with the corrected code only."
        )
        reply = llm.complete([{"role": "user", "content": repair}])
        try:
            graph = parse_code(_strip_fences(reply), deps.registry)
        except CodeParseError as second_error:
            raise SynthesisError(
                f"unparseable after repair retry: {second_error}"
            ) from second_error
    if not graph.nodes:
        raise SynthesisError("provider returned an empty workflow")
    return _candidate(graph, deps, "synthesized")


@dataclass
class GenCase:
    intent: str
    reference: WorkflowGraph


@dataclass
class GenReport:
    pass_rate: float
    avg_nodes: float
    precision: float
    recall: float
    f1: float
    total: int
    failures: int

    def to_dict(self) -> dict:
        return {
            "pass_rate": self.pass_rate,
            "avg_nodes": self.avg_nodes,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "total": self.total,
            "failures": self.failures,
        }


def evaluate_generation(cases: list[GenCase], deps: Deps) -> GenReport:
    """Synthesize per case; aggregate pass rate, node counts, and metrics.

    A case whose synthesis stays unparseable counts as failed with zero
    metrics and zero nodes; aggregates are unweighted means.
    """
    if not cases:
        raise ValueError("at least one case required")
    passes, nodes, ps, rs, f1s = [], [], [], [], []
    failures = 0
    for case in cases:
        intent = expand_intent(case.intent, llm=deps.providers.chat)
        try:
            candidate = synthesize(intent, deps)
        except (SynthesisError, ProviderError) as exc:
            logger.info("case failed synthesis: %s", exc)
            failures += 1
            passes.append(0.0)
            nodes.append(0)
            ps.append(0.0)
            rs.append(0.0)
            f1s.append(0.0)
            continue
        metrics = node_metrics(candidate.graph, case.reference)
        passes.append(1.0 if candidate.report.passed else 0.0)
        nodes.append(len(candidate.graph.nodes))
        ps.append(metrics.precision)
        rs.append(metrics.recall)
        f1s.append(metrics.f1)
    n = len(cases)
    return GenReport(
        pass_rate=sum(passes) / n,
        avg_nodes=sum(nodes) / n,
        precision=sum(ps) / n,
        recall=sum(rs) / n,
        f1=sum(f1s) / n,
        total=n,
        failures=failures,
    )
