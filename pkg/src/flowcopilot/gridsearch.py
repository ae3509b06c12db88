"""Parameter grid expansion and bounded-parallel sweep execution.

A grid names literal inputs on workflow nodes and the values to try;
expansion produces one deep-copied variant per combination (lexicographic
over the axes in the given order). run_sweep submits the variants
through a WorkflowExecutor with bounded parallelism and restores
enumeration order regardless of completion order.
"""

from __future__ import annotations

import copy
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .ir import Edge, WorkflowGraph, graph_to_obj
from .providers.base import ProviderError, WorkflowExecutor

logger = logging.getLogger(__name__)

DEFAULT_CAP = 64


class GridError(ValueError):
    pass


@dataclass
class GridAxis:
    node_id: str
    input_name: str
    values: list

    def key(self) -> str:
        return f"{self.node_id}.{self.input_name}"


@dataclass
class ParamGridSpec:
    axes: list[GridAxis]
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not self.axes:
            raise GridError("grid needs at least one axis")
        seen = set()
        for axis in self.axes:
            if not axis.values:
                raise GridError(f"axis {axis.key()} has no values")
            pair = (axis.node_id, axis.input_name)
            if pair in seen:
                raise GridError(f"duplicate axis {axis.key()}")
            seen.add(pair)

    def size(self) -> int:
        return math.prod(len(axis.values) for axis in self.axes)

    @classmethod
    def from_dict(cls, obj: dict) -> "ParamGridSpec":
        axes = [
            GridAxis(
                node_id=str(a["node_id"]),
                input_name=str(a["input_name"]),
                values=list(a["values"]),
            )
            for a in obj.get("axes", [])
        ]
        return cls(axes=axes, cap=int(obj.get("cap", DEFAULT_CAP)))


@dataclass
class SweepRun:
    combo: dict[str, object]  # "node_id.input_name" -> literal
    status: str  # done | failed | aborted
    outputs: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"combo": dict(self.combo), "status": self.status, "outputs": list(self.outputs)}


@dataclass
class SweepResult:
    runs: list[SweepRun]

    def to_dict(self) -> dict:
        return {"runs": [r.to_dict() for r in self.runs]}


def _combos(grid: ParamGridSpec) -> list[list]:
    """Cartesian product, lexicographic over axes in the given order."""
    combos: list[list] = [[]]
    for axis in grid.axes:
        combos = [prefix + [value] for prefix in combos for value in axis.values]
    return combos


def expand_grid(workflow: WorkflowGraph, grid: ParamGridSpec) -> list[WorkflowGraph]:
    """One variant per combination, differing only at the axis literals."""
    for axis in grid.axes:
        node = workflow.nodes.get(axis.node_id)
        if node is None:
            raise GridError(f"axis {axis.key()}: node '{axis.node_id}' not in workflow")
        if axis.input_name not in node.inputs:
            raise GridError(f"axis {axis.key()}: input not present on node")
        if isinstance(node.inputs[axis.input_name], Edge):
            raise GridError(f"axis {axis.key()}: input is wired to an edge, not a literal")
    if grid.size() > grid.cap:
        raise GridError(f"grid has {grid.size()} combinations, exceeding the cap of {grid.cap}")

    variants = []
    for combo in _combos(grid):
        variant = copy.deepcopy(workflow)
        for axis, value in zip(grid.axes, combo):
            variant.nodes[axis.node_id].inputs[axis.input_name] = value
        variants.append(variant)
    return variants


def run_sweep(
    workflow: WorkflowGraph,
    grid: ParamGridSpec,
    executor: WorkflowExecutor,
    parallelism: int = 4,
    poll_interval: float = 0.01,
    timeout: float = 300.0,
) -> SweepResult:
    """Run every variant; at most ``parallelism`` submissions in flight.

    Results come back in enumeration order whatever the completion
    order. If the executor becomes unavailable the sweep aborts:
    finished runs keep their status, never-submitted combos are marked
    ``aborted``.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    variants = expand_grid(workflow, grid)
    combos = _combos(grid)
    combo_dicts = [
        {axis.key(): value for axis, value in zip(grid.axes, combo)} for combo in combos
    ]

    aborted = False

    def _run_one(index: int) -> SweepRun:
        nonlocal aborted
        if aborted:
            return SweepRun(combo=combo_dicts[index], status="aborted")
        try:
            handle = executor.submit(graph_to_obj(variants[index]))
            deadline = time.monotonic() + timeout
            status = executor.poll(handle)
            while not status.terminal:
                if time.monotonic() > deadline:
                    return SweepRun(combo=combo_dicts[index], status="failed")
                time.sleep(poll_interval)
                status = executor.poll(handle)
            return SweepRun(
                combo=combo_dicts[index], status=status.status, outputs=status.outputs
            )
        except ProviderError as exc:
            logger.error("executor unavailable, aborting sweep: %s", exc)
            aborted = True
            return SweepRun(combo=combo_dicts[index], status="aborted")

    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        runs = list(pool.map(_run_one, range(len(variants))))
    return SweepResult(runs=runs)
