"""Independent oracles and random generators used across the suite.

Everything here is deliberately written without touching the production
code paths it checks: scores, metrics, and rankings are recomputed from
their definitions.
"""

from __future__ import annotations

import math
import random
import re

from flowcopilot.ir import Edge, NodeInstance, WorkflowGraph, topo_order
from flowcopilot.kb import KnowledgeBase, ModelEntry, NodeSpec, OutSpec, ParamSpec

# --- independent scoring oracles -------------------------------------------


def oracle_fnv1a32(data: bytes) -> int:
    h = 0x811C9DC5
    for b in data:
        h = ((h ^ b) * 0x01000193) % (1 << 32)
    return h


def oracle_embed(text: str, dim: int = 256) -> list[float]:
    t = text.lower()
    counts = [0] * dim
    if len(t) == 0:
        return [0.0] * dim
    grams = [t] if len(t) < 3 else [t[i : i + 3] for i in range(len(t) - 2)]
    for g in grams:
        counts[oracle_fnv1a32(g.encode("utf-8")) % dim] += 1
    norm = math.sqrt(float(sum(c * c for c in counts)))
    return [c / norm for c in counts]


def oracle_cosine01(u: list[float], v: list[float]) -> float:
    if list(u) == list(v):
        nu = sum(x * x for x in u)
        cos = 0.0 if nu == 0.0 else 1.0
    else:
        dot = sum(a * b for a, b in zip(u, v))
        nu = math.sqrt(sum(a * a for a in u))
        nv = math.sqrt(sum(b * b for b in v))
        cos = 0.0 if nu == 0.0 or nv == 0.0 else max(-1.0, min(1.0, dot / (nu * nv)))
    return (cos + 1.0) / 2.0


def oracle_lexical(query: str, doc: str) -> float:
    q = set(re.findall(r"[a-z0-9]+", query.lower()))
    d = set(re.findall(r"[a-z0-9]+", doc.lower()))
    if not q:
        return 0.0
    return len(q & d) / len(q)


def oracle_sim_o(query: str, doc: str, w_s: float = 0.7, w_l: float = 0.3) -> float:
    sim_s = oracle_cosine01(oracle_embed(query), oracle_embed(doc))
    return w_s * sim_s + w_l * oracle_lexical(query, doc)


def oracle_ranking(query: str, items) -> list[str]:
    """Brute-force full ranking of (id, text) items by sim_O desc, id asc."""
    scored = [(-oracle_sim_o(query, item.text), item.id) for item in items]
    scored.sort()
    return [item_id for _, item_id in scored]


def oracle_multiset_metrics(gen: list[str], ref: list[str]) -> tuple[float, float, float]:
    """Two-pointer multiset intersection over sorted class lists."""
    a, b = sorted(gen), sorted(ref)
    i = j = matched = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            matched += 1
            i += 1
            j += 1
        elif a[i] < b[j]:
            i += 1
        else:
            j += 1
    p = matched / len(a) if a else 0.0
    r = matched / len(b) if b else 0.0
    f1 = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f1


# --- random graph generation -------------------------------------------------


SYNTH_CLASSES = [
    ("AlphaSource", 0, 1),
    ("BetaSource", 0, 2),
    ("GammaFilter", 1, 1),
    ("DeltaMix", 2, 1),
    ("EpsilonSplit", 1, 3),
    ("ZetaSink", 1, 0),
    ("My Weird-Node!", 1, 1),  # exercises the quoted-classref path
    ("HTTPFetch2", 0, 1),
]


def synth_registry() -> KnowledgeBase:
    kb = KnowledgeBase()
    for name, n_in, n_out in SYNTH_CLASSES:
        kb.nodes[name] = NodeSpec(
            class_type=name,
            inputs=[ParamSpec(name=f"in{i}", type="*", required=False) for i in range(n_in)],
            outputs=[OutSpec(name=f"out{i}", type="*") for i in range(n_out)],
        )
    return kb


_LITERAL_POOL = [
    "plain",
    'quotes " inside',
    "back\\slash",
    "new\nline and\ttab",
    "unicode ż🎨",
    "",
    0,
    7,
    -3,
    2.5,
    -0.125,
    1e20,
    True,
    False,
]


def random_graph(rng: random.Random, max_nodes: int = 30) -> WorkflowGraph:
    """Random DAG over the synthetic classes; edges only point backwards."""
    n = rng.randint(1, max_nodes)
    ids = [str(i) for i in rng.sample(range(1, 500), n)]
    nodes: dict[str, NodeInstance] = {}
    for idx, node_id in enumerate(ids):
        name, n_in, n_out = rng.choice(SYNTH_CLASSES)
        inputs: dict = {}
        for k in range(n_in):
            if idx > 0 and rng.random() < 0.7:
                up_idx = rng.randrange(idx)
                up_id = ids[up_idx]
                up_outs = dict((c[0], c[2]) for c in SYNTH_CLASSES)[
                    nodes[up_id].class_type
                ]
                if up_outs > 0:
                    inputs[f"in{k}"] = Edge(upstream=up_id, slot=rng.randrange(up_outs))
                    continue
            inputs[f"in{k}"] = rng.choice(_LITERAL_POOL)
        if rng.random() < 0.3:
            inputs["extra"] = rng.choice(_LITERAL_POOL)
        nodes[node_id] = NodeInstance(class_type=name, inputs=inputs)
    return WorkflowGraph(nodes=nodes)


def graphs_isomorphic(a: WorkflowGraph, b: WorkflowGraph) -> bool:
    """True when a and b are equal up to node-id relabeling.

    The candidate bijection maps a's deterministic topological order onto
    b's; with it fixed, classes, literals, and slot-resolved edges must
    all match exactly.
    """
    if len(a.nodes) != len(b.nodes):
        return False
    order_a = topo_order(a)
    order_b = topo_order(b)
    mapping = dict(zip(order_a, order_b))
    for a_id in order_a:
        na, nb = a.nodes[a_id], b.nodes[mapping[a_id]]
        if na.class_type != nb.class_type:
            return False
        if set(na.inputs) != set(nb.inputs):
            return False
        for name, va in na.inputs.items():
            vb = nb.inputs[name]
            if isinstance(va, Edge) != isinstance(vb, Edge):
                return False
            if isinstance(va, Edge):
                if mapping[va.upstream] != vb.upstream or va.slot != vb.slot:
                    return False
            else:
                if va != vb or type(va) is not type(vb):
                    return False
    return True


# --- synthetic KBs ------------------------------------------------------------

_VOCAB = (
    "image picture render style transfer upscale restore face swap video clip "
    "latent noise sampler scheduler mask depth pose sketch anime portrait "
    "landscape texture color light shadow detail fast slow batch seed model "
    "checkpoint lora adapter encode decode blend merge crop resize segment "
    "caption prompt guide control edge sharpen denoise cartoon photo realistic"
).split()


def synthetic_model_kb(n: int, seed: int = 0) -> KnowledgeBase:
    """KB of n model entries with unique random descriptions."""
    rng = random.Random(seed)
    kb = KnowledgeBase()
    seen = set()
    for i in range(n):
        while True:
            words = rng.sample(_VOCAB, rng.randint(5, 10))
            text = " ".join(words)
            if text not in seen:
                seen.add(text)
                break
        kb.models[f"m{i:04d}"] = ModelEntry(
            id=f"m{i:04d}",
            name=f"model {i}",
            kind=rng.choice(["checkpoint", "lora", "vae"]),
            description=text,
            downloads=rng.randint(0, 100000),
            upvotes=rng.randint(0, 5000),
        )
    return kb
