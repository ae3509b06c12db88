"""Executability checks of a workflow graph against a node registry.

The registry is duck-typed: it needs ``get(class_type) -> spec | None``
and ``class_types() -> iterable of str``, where a spec carries ``inputs``
(objects with name/type/required/combo_options), ``outputs`` (objects
with name/type) and ``repo_url``. The package's KnowledgeBase satisfies
this; tests use lightweight stand-ins.
"""

from __future__ import annotations

import difflib
from dataclasses import dataclass, field

from .model import Edge, GraphCycleError, WorkflowGraph, topo_order

WILDCARD = "*"


@dataclass
class Issue:
    severity: str  # "error" | "warning"
    kind: str  # missing-node | missing-required-input | type-mismatch | cycle
    #           | dangling-edge | combo-out-of-range | unknown-input
    node_id: str | None
    detail: str
    install_hint: str | None = None

    def to_dict(self) -> dict:
        return {
            "severity": self.severity,
            "kind": self.kind,
            "node_id": self.node_id,
            "detail": self.detail,
            "install_hint": self.install_hint,
        }


@dataclass
class ValidationReport:
    passed: bool
    issues: list[Issue] = field(default_factory=list)

    @property
    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity == "error"]

    def to_dict(self) -> dict:
        return {"pass": self.passed, "issues": [i.to_dict() for i in self.issues]}


def find_near_match(class_type: str, registry) -> object | None:
    """Closest registered class by name similarity, or None."""
    names = sorted(registry.class_types())
    hits = difflib.get_close_matches(class_type, names, n=1, cutoff=0.6)
    return registry.get(hits[0]) if hits else None


def validate(graph: WorkflowGraph, registry) -> ValidationReport:
    """Report every executability problem; never raises for graph defects.

    Errors: unknown class (with an install hint from the closest
    registered class when one exists), missing required input, edge type
    mismatch (wildcard ``*`` matches anything), cycle, dangling edge.
    Warnings: combo literal outside the declared options, input names
    the registry does not declare.
    """
    issues: list[Issue] = []

    try:
        topo_order(graph)
    except GraphCycleError as exc:
        issues.append(
            Issue(
                severity="error",
                kind="cycle",
                node_id=exc.members[0] if exc.members else None,
                detail=f"cycle among nodes: {', '.join(exc.members)}",
            )
        )

    specs = {}
    for node_id, node in graph.nodes.items():
        spec = registry.get(node.class_type)
        specs[node_id] = spec
        if spec is None:
            near = find_near_match(node.class_type, registry)
            hint = getattr(near, "repo_url", None) if near is not None else None
            issues.append(
                Issue(
                    severity="error",
                    kind="missing-node",
                    node_id=node_id,
                    detail=f"unknown node class '{node.class_type}'",
                    install_hint=hint,
                )
            )

    for node_id, node in graph.nodes.items():
        spec = specs[node_id]
        if spec is None:
            continue  # per-input checks would only cascade noise
        params = {p.name: p for p in spec.inputs}

        for param in spec.inputs:
            if param.required and param.name not in node.inputs:
                issues.append(
                    Issue(
                        severity="error",
                        kind="missing-required-input",
                        node_id=node_id,
                        detail=f"required input '{param.name}' is not set",
                    )
                )

        for name, value in node.inputs.items():
            param = params.get(name)
            if param is None:
                issues.append(
                    Issue(
                        severity="warning",
                        kind="unknown-input",
                        node_id=node_id,
                        detail=f"input '{name}' is not declared by '{node.class_type}'",
                    )
                )
                continue
            if isinstance(value, Edge):
                if value.upstream not in graph.nodes:
                    issues.append(
                        Issue(
                            severity="error",
                            kind="dangling-edge",
                            node_id=node_id,
                            detail=(
                                f"input '{name}' references missing node "
                                f"'{value.upstream}'"
                            ),
                        )
                    )
                    continue
                up_spec = specs.get(value.upstream)
                if up_spec is None:
                    continue  # upstream class unknown; typing unknowable
                if value.slot >= len(up_spec.outputs):
                    issues.append(
                        Issue(
                            severity="error",
                            kind="dangling-edge",
                            node_id=node_id,
                            detail=(
                                f"input '{name}' references output slot {value.slot} "
                                f"of '{value.upstream}', which has only "
                                f"{len(up_spec.outputs)} output(s)"
                            ),
                        )
                    )
                    continue
                out_type = up_spec.outputs[value.slot].type
                if WILDCARD not in (out_type, param.type) and out_type != param.type:
                    issues.append(
                        Issue(
                            severity="error",
                            kind="type-mismatch",
                            node_id=node_id,
                            detail=(
                                f"input '{name}' expects {param.type} but receives "
                                f"{out_type} from '{value.upstream}'[{value.slot}]"
                            ),
                        )
                    )
            else:
                options = getattr(param, "combo_options", None)
                if options is not None and value not in options:
                    issues.append(
                        Issue(
                            severity="warning",
                            kind="combo-out-of-range",
                            node_id=node_id,
                            detail=(
                                f"input '{name}' value {value!r} is not among the "
                                f"declared options"
                            ),
                        )
                    )

    passed = not any(i.severity == "error" for i in issues)
    return ValidationReport(passed=passed, issues=issues)
