"""Recall evaluation harness and synthetic test-set generators.

Gold test sets are user-supplied JSONL; since no public set exists the
harness also synthesizes cases from the KB itself, either verbatim
(instruction = the gold entry's description) or paraphrased
(word-shuffled with a fraction of words replaced by fixed synonyms).
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from .config import Deps
from .retrieval import recommend

_SYNONYMS = {
    "image": "picture",
    "images": "pictures",
    "photo": "shot",
    "fast": "quick",
    "quickly": "rapidly",
    "create": "produce",
    "creates": "produces",
    "generate": "create",
    "generates": "creates",
    "generation": "synthesis",
    "workflow": "pipeline",
    "upscale": "enlarge",
    "upscaling": "enlarging",
    "enhance": "improve",
    "enhances": "improves",
    "quality": "fidelity",
    "restore": "repair",
    "style": "look",
    "detailed": "intricate",
    "remove": "erase",
    "background": "backdrop",
    "portrait": "headshot",
    "video": "clip",
    "convert": "transform",
    "node": "block",
    "model": "network",
    "latent": "hidden",
    "sampler": "sampling",
    "decode": "decoding",
    "encode": "encoding",
    "load": "read",
    "loads": "reads",
    "save": "store",
    "saves": "stores",
    "text": "caption",
    "small": "compact",
    "large": "big",
}


@dataclass
class RecallEvalCase:
    instruction: str
    gold_id: str
    kind: str  # workflow | node

    def to_dict(self) -> dict:
        return {"instruction": self.instruction, "gold_id": self.gold_id, "kind": self.kind}


@dataclass
class RecallEvalReport:
    k: int
    total: int
    hits: int
    recall_at_k: float
    rejected: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "total": self.total,
            "hits": self.hits,
            "recall_at_k": self.recall_at_k,
            "rejected": list(self.rejected),
        }


def _gold_exists(kb, kind: str, gold_id: str) -> bool:
    if kind == "workflow":
        return gold_id in kb.workflows
    if kind == "node":
        return gold_id in kb.nodes
    if kind == "model":
        return gold_id in kb.models
    return False


def eval_recall(cases: list[RecallEvalCase], deps: Deps, k: int = 3) -> RecallEvalReport:
    """Hit rate of the gold entry within the pipeline's top k.

    Cases with an unknown gold id (or kind) are rejected and reported,
    never silently skipped; they do not enter the totals.
    """
    if not cases:
        raise ValueError("at least one case required")
    cfg = replace(deps.config.retrieval, final_k=k, recall_k=max(deps.config.retrieval.recall_k, k))
    hits = 0
    total = 0
    rejected = []
    for case in cases:
        if not _gold_exists(deps.kb, case.kind, case.gold_id):
            rejected.append(
                {"case": case.to_dict(), "reason": f"gold id not in the {case.kind} KB"}
            )
            continue
        total += 1
        ranked = recommend(
            case.instruction,
            case.kind,
            deps.kb,
            cfg,
            deps.providers.chat,
            deps.providers.emb,
            deps.providers.reranker,
        )
        if any(c.id == case.gold_id for c in ranked[:k]):
            hits += 1
    return RecallEvalReport(
        k=k,
        total=total,
        hits=hits,
        recall_at_k=hits / total if total else 0.0,
        rejected=rejected,
    )


def load_cases_jsonl(path: str | Path) -> list[RecallEvalCase]:
    cases = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        try:
            cases.append(
                RecallEvalCase(
                    instruction=str(obj["instruction"]),
                    gold_id=str(obj["gold_id"]),
                    kind=str(obj.get("kind", "workflow")),
                )
            )
        except KeyError as exc:
            raise ValueError(f"line {line_no}: missing field {exc}") from exc
    return cases


def make_verbatim_cases(kb, kind: str, limit: int | None = None) -> list[RecallEvalCase]:
    """One case per entry, instruction equal to the entry's description."""
    items = sorted(kb.retrieval_items(kind), key=lambda it: it.id)
    if limit is not None:
        items = items[:limit]
    return [
        RecallEvalCase(instruction=item.text, gold_id=item.id, kind=kind)
        for item in items
        if item.text
    ]


def paraphrase(text: str, rng: random.Random, synonym_rate: float = 0.3) -> str:
    """Shuffle the word order and swap ~synonym_rate of words via a fixed table."""
    words = re.findall(r"\S+", text)
    if not words:
        return text
    out = []
    for word in words:
        core = word.lower().strip(".,;:!?()")
        if core in _SYNONYMS and rng.random() < synonym_rate:
            out.append(_SYNONYMS[core])
        else:
            out.append(word)
    rng.shuffle(out)
    return " ".join(out)


def make_paraphrase_cases(
    kb, kind: str, seed: int = 0, synonym_rate: float = 0.3, limit: int | None = None
) -> list[RecallEvalCase]:
    rng = random.Random(seed)
    cases = []
    for case in make_verbatim_cases(kb, kind, limit=limit):
        cases.append(replace(case, instruction=paraphrase(case.instruction, rng, synonym_rate)))
    return cases
