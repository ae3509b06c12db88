"""The assistant agent: routes each message, runs one worker, replies.

Replies carry typed attachments the UI renders as cards; clarification
attachments are first-class (question + missing field) so the
conversational contract stays machine-checkable.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from ..config import Deps
from ..ir import find_near_match
from ..kb import NotFoundError
from ..providers.base import ChatProvider, ProviderError
from ..retrieval import Intent, ListKb, expand_intent, recommend
from ..wfgen import propose
from .router import RoutingDecision, find_class_mention, route
from .session import ChatSession

logger = logging.getLogger(__name__)

ATTACHMENT_KINDS = (
    "workflow-candidate",
    "node-card",
    "model-card",
    "install-guide",
    "prompt-variants",
    "param-grid-result",
    "clarification",
    "error",
)


@dataclass
class Attachment:
    kind: str
    title: str
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ATTACHMENT_KINDS:
            raise ValueError(f"unknown attachment kind '{self.kind}'")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "title": self.title, "payload": self.payload}


@dataclass
class AgentReply:
    text: str
    attachments: list[Attachment] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "attachments": [a.to_dict() for a in self.attachments],
        }


def _cite(lead: str, attachments: list[Attachment]) -> str:
    titles = [a.title for a in attachments]
    if not titles:
        return lead
    return f"{lead}: " + "; ".join(titles)


class Assistant:
    def __init__(self, deps: Deps):
        self.deps = deps

    @property
    def _chat(self) -> ChatProvider | None:
        return self.deps.providers.chat

    def _pipeline(self, query: str | Intent, kind: str):
        return recommend(
            query,
            kind,
            self.deps.kb,
            self.deps.config.retrieval,
            self._chat,
            self.deps.providers.emb,
            self.deps.providers.reranker,
        )

    # -- entry point ---------------------------------------------------------

    def handle(self, message: str, session: ChatSession) -> AgentReply:
        """Route, dispatch to one worker, remember both sides, reply."""
        with session.lock:
            session.append("user", message)
            decision = route(message, session, self._chat, self.deps.kb)
            try:
                reply = self._dispatch(decision, message, session)
            except Exception as exc:
                logger.exception("worker for %s failed", decision.target)
                reply = AgentReply(
                    text=(
                        "Sorry, I could not complete that request "
                        f"({type(exc).__name__})."
                    ),
                    attachments=[
                        Attachment(
                            kind="error",
                            title="worker error",
                            payload={
                                "target": decision.target,
                                "kind": type(exc).__name__,
                                "detail": str(exc),
                            },
                        )
                    ],
                )
            session.append("assistant", reply.text)
            return reply

    def _dispatch(
        self, decision: RoutingDecision, message: str, session: ChatSession
    ) -> AgentReply:
        if decision.target == "WORKFLOW_GEN":
            return self.recommend_workflows(message, session)
        if decision.target == "NODE_REC":
            return self.recommend_nodes(message, session)
        if decision.target == "MODEL_REC":
            return self.recommend_models(message, session)
        if decision.target == "NODE_QA":
            class_type = find_class_mention(message, self.deps.kb)
            return self.node_qa(class_type or "", message)
        if decision.target == "PROMPT_WRITE":
            return self.prompt_reply(message)
        if decision.target == "PARAM_SEARCH":
            return AgentReply(
                text=(
                    "To run a parameter sweep, send your workflow and a grid to "
                    "the parameter-search endpoint (or `flowcopilot paramsearch "
                    "--workflow wf.json --axis \"3.cfg=6,7,8\"`); I will execute "
                    "every combination and collect the results side by side."
                )
            )
        return self._direct(message, session)

    # -- workers ---------------------------------------------------------------

    def recommend_workflows(self, message: str, session: ChatSession) -> AgentReply:
        intent = expand_intent(message, llm=self._chat)
        candidates = propose(intent, self.deps)
        attachments = []
        for cand in candidates:
            title = cand.title or cand.entry_ref or "generated workflow"
            attachments.append(
                Attachment(kind="workflow-candidate", title=title, payload=cand.to_dict())
            )
        return AgentReply(
            text=_cite(f"I found {len(attachments)} workflow candidate(s)", attachments),
            attachments=attachments,
        )

    def recommend_nodes(self, message: str, session: ChatSession) -> AgentReply:
        ranked = self._pipeline(message, "node")
        attachments = []
        for cand in ranked:
            spec = self.deps.kb.get(cand.id)
            if spec is None:
                continue
            attachments.append(
                Attachment(
                    kind="node-card",
                    title=spec.display_name or spec.class_type,
                    payload={
                        "class_type": spec.class_type,
                        "description": spec.description,
                        "stars": spec.stars,
                        "repo_url": spec.repo_url,
                        "category": spec.category,
                        "scores": cand.to_dict(),
                    },
                )
            )
        return AgentReply(
            text=_cite(f"Top {len(attachments)} node(s) for your task", attachments),
            attachments=attachments,
        )

    def recommend_models(self, message: str, session: ChatSession) -> AgentReply:
        """Model cards; LoRA requests are filtered by the session's base model.

        A LoRA request with no known base model yields a clarification
        asking which diffusion model is in use.
        """
        wants_lora = "lora" in message.lower()
        base = self._base_model_from_context(message, session)
        if wants_lora and base is None:
            options = self._known_base_models()
            return AgentReply(
                text=(
                    "Which diffusion model are you using? LoRA models are "
                    "compatibility-bound to their base model."
                ),
                attachments=[
                    Attachment(
                        kind="clarification",
                        title="Which diffusion model do you use?",
                        payload={
                            "question": "Which diffusion model do you use?",
                            "missing": "base_model",
                            "options": options,
                        },
                    )
                ],
            )
        if wants_lora:
            # Compatibility filter runs before ranking so incompatible
            # models never occupy top-k slots.
            allowed = {
                m.id
                for m in self.deps.kb.models.values()
                if m.kind == "lora"
                and base is not None
                and (m.base_model or "").lower() == base.lower()
            }
            items = [
                it for it in self.deps.kb.retrieval_items("model") if it.id in allowed
            ]
            if not items:
                return AgentReply(
                    text=f"I know no LoRA models for base model '{base}'."
                )
            source = ListKb(items)
        else:
            source = self.deps.kb
        ranked = recommend(
            message,
            "model",
            source,
            self.deps.config.retrieval,
            self._chat,
            self.deps.providers.emb,
            self.deps.providers.reranker,
        )
        attachments = []
        for cand in ranked:
            entry = self.deps.kb.models.get(cand.id)
            if entry is None:
                continue
            attachments.append(
                Attachment(
                    kind="model-card",
                    title=entry.name or entry.id,
                    payload={
                        "id": entry.id,
                        "name": entry.name,
                        "kind": entry.kind,
                        "base_model": entry.base_model,
                        "description": entry.description,
                        "downloads": entry.downloads,
                        "upvotes": entry.upvotes,
                        "scores": cand.to_dict(),
                    },
                )
            )
        return AgentReply(
            text=_cite(f"Top {len(attachments)} model(s)", attachments),
            attachments=attachments,
        )

    def node_qa(self, class_type: str, question: str) -> AgentReply:
        """Answer grounded in the stored spec + doc, with downstream suggestions."""
        try:
            spec = self.deps.kb.lookup_node(class_type)
        except NotFoundError:
            near = find_near_match(class_type, self.deps.kb) if class_type else None
            attachments = []
            if near is not None and near.repo_url:
                attachments.append(
                    Attachment(
                        kind="install-guide",
                        title=f"Install {near.class_type}",
                        payload={"class_type": near.class_type, "repo_url": near.repo_url},
                    )
                )
            return AgentReply(
                text=f"I don't know a node class called '{class_type}'.",
                attachments=attachments,
            )

        doc = spec.doc
        downstream = self._downstream_classes(spec)
        if self._chat is None or self._chat.offline:
            lines = [f"{spec.display_name or spec.class_type}: {spec.description}"]
            if doc is not None:
                for name, text in doc.input_docs.items():
                    lines.append(f"- input {name}: {text}")
                for name, text in doc.output_docs.items():
                    lines.append(f"- output {name}: {text}")
            else:
                for p in spec.inputs:
                    lines.append(f"- input {p.name}: {p.type}")
                for o in spec.outputs:
                    lines.append(f"- output {o.name}: {o.type}")
            answer = "\n".join(lines)
        else:
            context = {
                "spec": spec.to_dict(),
                "question": question,
            }
            prompt = (
                "Answer the user's question about this node using only the "
                f"specification and documentation below.\n{context}"
            )
            try:
                answer = self._chat.complete([{"role": "user", "content": prompt}])
            except ProviderError as exc:
                logger.warning("node QA provider failed: %s", exc)
                answer = f"{spec.display_name or spec.class_type}: {spec.description}"

        return AgentReply(
            text=answer,
            attachments=[
                Attachment(
                    kind="node-card",
                    title=spec.display_name or spec.class_type,
                    payload={
                        "class_type": spec.class_type,
                        "description": spec.description,
                        "stars": spec.stars,
                        "repo_url": spec.repo_url,
                        "doc": doc.to_dict() if doc is not None else None,
                        "downstream": downstream,
                    },
                )
            ],
        )

    def write_prompts(self, short_prompt: str, n: int = 3) -> list[str]:
        """n distinct detailed prompt variants; deterministic offline."""
        if n < 1:
            raise ValueError("n must be >= 1")
        variants: list[str] = []
        llm = self._chat
        if llm is not None and not llm.offline:
            ask = (
                f"Expand the text-to-image prompt {short_prompt!r} into {n} "
                "distinct, richly detailed prompts. Reply with a JSON array "
                "of strings only."
            )
            try:
                reply = llm.complete([{"role": "user", "content": ask}])
                parsed = json.loads(reply[reply.find("[") : reply.rfind("]") + 1])
                for item in parsed:
                    text = str(item).strip()
                    if text and text not in variants:
                        variants.append(text)
            except (ProviderError, ValueError) as exc:
                logger.warning("prompt writing provider failed: %s", exc)
        for candidate in _template_prompts(short_prompt):
            if len(variants) >= n:
                break
            if candidate not in variants:
                variants.append(candidate)
        return variants[:n]

    def prompt_reply(self, message: str) -> AgentReply:
        variants = self.write_prompts(message, n=3)
        attachment = Attachment(
            kind="prompt-variants",
            title=f"{len(variants)} prompt variants",
            payload={"variants": variants},
        )
        return AgentReply(
            text=_cite("Here are refined prompts", [attachment]),
            attachments=[attachment],
        )

    # -- helpers ---------------------------------------------------------------

    def _direct(self, message: str, session: ChatSession) -> AgentReply:
        mention = find_class_mention(message, self.deps.kb)
        snippets = ""
        if mention is not None:
            spec = self.deps.kb.get(mention)
            if spec is not None:
                snippets = f"\nKnown node '{mention}': {spec.description}"
        if self._chat is None:
            return AgentReply(text=f"(no chat backend configured){snippets}")
        history = "\n".join(f"{m.role}: {m.content}" for m in session.tail(8))
        prompt = (
            f"Conversation so far:\n{history}\n"
            f"Answer the last user message.{snippets}"
        )
        try:
            answer = self._chat.complete([{"role": "user", "content": prompt}])
        except ProviderError as exc:
            logger.warning("direct answer provider failed: %s", exc)
            answer = f"I can't reach the language model right now.{snippets}"
        return AgentReply(text=answer)

    def _known_base_models(self) -> list[str]:
        return sorted(
            {m.base_model for m in self.deps.kb.models.values() if m.base_model}
        )

    def _base_model_from_context(
        self, message: str, session: ChatSession
    ) -> str | None:
        known = self._known_base_models()
        texts = [message] + [
            m.content for m in reversed(session.messages) if m.role == "user"
        ]
        for text in texts:
            lowered = text.lower()
            for base in known:
                if base.lower() in lowered:
                    return base
        return None

    def _downstream_classes(self, spec, limit: int = 5) -> list[dict]:
        """Classes consuming any of this node's output types, by popularity."""
        out_types = {o.type for o in spec.outputs}
        if not out_types:
            return []
        hits = []
        for other in self.deps.kb.nodes.values():
            in_types = {p.type for p in other.inputs}
            if out_types & in_types or "*" in in_types or "*" in out_types:
                hits.append(other)
        hits.sort(key=lambda s: (-s.stars, s.class_type))
        return [
            {"class_type": s.class_type, "stars": s.stars, "repo_url": s.repo_url}
            for s in hits[:limit]
        ]


_STYLES = [
    "highly detailed digital painting",
    "cinematic photograph, 85mm lens",
    "soft watercolor illustration",
    "studio product shot",
    "isometric 3d render",
    "vintage film still",
]
_LIGHTING = [
    "golden hour lighting",
    "dramatic rim light",
    "diffuse overcast light",
    "neon glow",
    "candlelit ambience",
    "harsh noon sun",
]
_QUALITY = [
    "intricate details, sharp focus",
    "masterpiece, trending quality",
    "8k, physically based rendering",
    "award-winning composition",
    "fine art print quality",
    "ultra-detailed textures",
]


def _template_prompts(subject: str, count: int = 64) -> list[str]:
    """Deterministic prompt expansions: subject + style + lighting + quality."""
    out = []
    for i in range(count):
        style = _STYLES[i % len(_STYLES)]
        light = _LIGHTING[(i // len(_STYLES)) % len(_LIGHTING)]
        quality = _QUALITY[(i // (len(_STYLES) * len(_LIGHTING))) % len(_QUALITY)]
        variant = f"{subject}, {style}, {light}, {quality}"
        if i >= len(_STYLES) * len(_LIGHTING) * len(_QUALITY):
            variant += f", variation {i}"
        out.append(variant)
    return out
