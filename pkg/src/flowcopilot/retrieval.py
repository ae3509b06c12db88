"""Three-stage coarse-to-fine recommendation pipeline.

Stage 1 expands the user intent, stage 2 recalls the top candidates by
the overall score ``sim_O = w_semantic * sim_S + w_lexical * sim_L``
(semantic cosine + word-overlap), stage 3 reranks to the final few and
orders them by popularity. Every stage is deterministic under the
offline providers; ties always break by ascending entry id.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field, replace

from . import kernels
from .providers.base import ChatProvider, EmbeddingProvider, ProviderError, RerankProvider

logger = logging.getLogger(__name__)

_WORD_RE = re.compile(r"[a-z0-9]+")


class EmptyKbError(ValueError):
    def __init__(self, kind: str):
        super().__init__(f"knowledge base has no '{kind}' entries")


@dataclass
class RetrievalConfig:
    w_semantic: float = 0.7
    w_lexical: float = 0.3
    recall_k: int = 30
    final_k: int = 3
    popularity_mode: str = "reorder"  # reorder | tiebreak

    def __post_init__(self):
        if abs(self.w_semantic + self.w_lexical - 1.0) > 1e-9:
            raise ValueError("retrieval weights must sum to 1")
        if not self.recall_k >= self.final_k >= 1:
            raise ValueError("recall_k >= final_k >= 1 required")
        if self.popularity_mode not in ("reorder", "tiebreak"):
            raise ValueError("popularity_mode must be 'reorder' or 'tiebreak'")


@dataclass
class Intent:
    raw: str
    expanded: str = ""
    language_tag: str | None = None

    def __post_init__(self):
        if not self.expanded:
            self.expanded = self.raw


@dataclass
class ScoredCandidate:
    id: str
    kind: str
    text: str
    popularity: int = 0
    sim_s: float = 0.0
    sim_l: float = 0.0
    sim_o: float = 0.0
    rerank: float | None = None
    pop: float = 0.0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "sim_s": self.sim_s,
            "sim_l": self.sim_l,
            "sim_o": self.sim_o,
            "rerank": self.rerank,
            "pop": self.pop,
        }


def expand_intent(
    raw: str, context: str | None = None, llm: ChatProvider | None = None
) -> Intent:
    """Expand a terse request into a detailed task description.

    Offline (or failing) providers degrade to the raw text; the pipeline
    never fails here.
    """
    if llm is None or llm.offline:
        return Intent(raw=raw, expanded=raw)
    prompt = (
        "Rewrite the following request as a detailed task description for an "
        "image/video generation workflow, keeping every stated constraint. "
        "Reply with the description only.\n"
    )
    if context:
        prompt += f"Context (attached media): {context}\n"
    prompt += f"Request: {raw}"
    try:
        expanded = llm.complete([{"role": "user", "content": prompt}]).strip()
    except ProviderError as exc:
        logger.warning("intent expansion unavailable, using raw text: %s", exc)
        return Intent(raw=raw, expanded=raw)
    return Intent(raw=raw, expanded=expanded or raw)


def tokenize(text: str) -> set[str]:
    return set(_WORD_RE.findall(text.lower()))


def lexical_sim(query: str, doc: str) -> float:
    """Share of the query's word set that appears in the doc (0 when empty)."""
    q = tokenize(query)
    if not q:
        return 0.0
    return len(q & tokenize(doc)) / len(q)


def semantic_sim(query: str, doc: str, emb: EmbeddingProvider) -> float:
    """Embedding cosine mapped from [-1, 1] to [0, 1] (zero vectors score 0.5)."""
    qv, dv = emb.embed([query, doc])
    return kernels.cosine01_batch(qv, [dv])[0]


def combined_score(sim_s: float, sim_l: float, cfg: RetrievalConfig) -> float:
    return cfg.w_semantic * sim_s + cfg.w_lexical * sim_l


def recall(
    intent: Intent, kind: str, kb, cfg: RetrievalConfig, emb: EmbeddingProvider
) -> list[ScoredCandidate]:
    """Top recall_k candidates by sim_O, descending; ties by id ascending."""
    items = kb.retrieval_items(kind)
    if not items:
        raise EmptyKbError(kind)
    query = intent.expanded
    vectors = emb.embed([query] + [item.text for item in items])
    sims = kernels.cosine01_batch(vectors[0], vectors[1:])
    candidates = []
    for item, sim_s in zip(items, sims):
        sim_l = lexical_sim(query, item.text)
        candidates.append(
            ScoredCandidate(
                id=item.id,
                kind=item.kind,
                text=item.text,
                popularity=item.popularity,
                sim_s=sim_s,
                sim_l=sim_l,
                sim_o=combined_score(sim_s, sim_l, cfg),
            )
        )
    candidates.sort(key=lambda c: (-c.sim_o, c.id))
    return candidates[: cfg.recall_k]


def rerank(
    intent: Intent,
    candidates: list[ScoredCandidate],
    reranker: RerankProvider,
    cfg: RetrievalConfig,
) -> list[ScoredCandidate]:
    """Provider-scored top final_k; falls back to sim_O order on failure."""
    if not candidates:
        return []
    try:
        scores = reranker.score(intent.expanded, [c.text for c in candidates])
        if len(scores) != len(candidates):
            raise ValueError("reranker returned wrong number of scores")
    except Exception as exc:  # any provider failure degrades, never aborts
        logger.warning("rerank unavailable, keeping recall order: %s", exc)
        scores = [c.sim_o for c in candidates]
    reranked = [replace(c, rerank=float(s)) for c, s in zip(candidates, scores)]
    reranked.sort(key=lambda c: (-(c.rerank or 0.0), c.id))
    return reranked[: cfg.final_k]


def popularity_order(
    top: list[ScoredCandidate], mode: str = "reorder"
) -> list[ScoredCandidate]:
    """Order the final candidates by log-damped popularity.

    ``reorder`` sorts by popularity first (rerank breaks ties);
    ``tiebreak`` keeps rerank order and only breaks exact rerank ties by
    popularity. Pure permutation: nothing is added or dropped.
    """
    scored = [replace(c, pop=math.log1p(max(c.popularity, 0))) for c in top]
    if mode == "tiebreak":
        scored.sort(key=lambda c: (-(c.rerank or 0.0), -c.pop, c.id))
    else:
        scored.sort(key=lambda c: (-c.pop, -(c.rerank or 0.0), c.id))
    return scored


def recommend(
    query: str | Intent,
    kind: str,
    kb,
    cfg: RetrievalConfig,
    chat: ChatProvider | None,
    emb: EmbeddingProvider,
    reranker: RerankProvider,
    context: str | None = None,
) -> list[ScoredCandidate]:
    """Full pipeline: expand -> recall -> rerank -> popularity order.

    An already-expanded Intent is used as-is.
    """
    intent = query if isinstance(query, Intent) else expand_intent(query, context=context, llm=chat)
    coarse = recall(intent, kind, kb, cfg, emb)
    top = rerank(intent, coarse, reranker, cfg)
    return popularity_order(top, cfg.popularity_mode)


@dataclass
class ListKb:
    """Minimal retrieval-items source for ad-hoc corpora (e.g. code chunks)."""

    items: list = field(default_factory=list)

    def retrieval_items(self, kind: str) -> list:
        return [item for item in self.items if item.kind == kind]
