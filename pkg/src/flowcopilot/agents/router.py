"""Routing of user messages to worker agents.

A chat provider gets a constrained choice over the target set; offline
or on provider failure, a deterministic keyword table decides. A
message naming a registered node class flips DIRECT/NODE_REC decisions
to NODE_QA (explicit workflow/model/prompt/parameter requests keep
their target).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from ..providers.base import ChatProvider
from .session import ChatSession

logger = logging.getLogger(__name__)

TARGETS = (
    "DIRECT",
    "WORKFLOW_GEN",
    "NODE_REC",
    "MODEL_REC",
    "NODE_QA",
    "PROMPT_WRITE",
    "PARAM_SEARCH",
)

# Checked in order; first hit wins.
_KEYWORD_RULES: list[tuple[tuple[str, ...], str]] = [
    (("workflow",), "WORKFLOW_GEN"),
    (("node",), "NODE_REC"),
    (("lora", "checkpoint", "model"), "MODEL_REC"),
    (("prompt",), "PROMPT_WRITE"),
    (("parameter", "sweep"), "PARAM_SEARCH"),
]


@dataclass
class RoutingDecision:
    target: str
    rationale: str


def find_class_mention(message: str, registry) -> str | None:
    """Longest registered class type mentioned in the message, if any."""
    lowered = message.lower()
    best = None
    for class_type in registry.class_types():
        if class_type.lower() in lowered:
            if best is None or (len(class_type), class_type) > (len(best), best):
                best = class_type
    return best


def _keyword_route(message: str, registry) -> RoutingDecision:
    lowered = message.lower()
    target = "DIRECT"
    matched = ""
    for keywords, candidate in _KEYWORD_RULES:
        hit = next((k for k in keywords if k in lowered), None)
        if hit is not None:
            target, matched = candidate, hit
            break
    mention = find_class_mention(message, registry)
    if mention is not None and target in ("DIRECT", "NODE_REC"):
        return RoutingDecision(
            target="NODE_QA",
            rationale=f"message names registered class '{mention}'",
        )
    if matched:
        return RoutingDecision(target=target, rationale=f"keyword '{matched}'")
    return RoutingDecision(target="DIRECT", rationale="no routing keyword matched")


def route(
    message: str,
    session: ChatSession,
    llm: ChatProvider | None,
    registry,
    history_window: int = 6,
) -> RoutingDecision:
    """Total routing: always yields a decision from the closed target set."""
    if llm is None or llm.offline:
        return _keyword_route(message, registry)

    history = "\n".join(
        f"{m.role}: {m.content}" for m in session.tail(history_window)
    )
    prompt = (
        "Choose the single best handler for the user's message. Reply with "
        f"exactly one of: {', '.join(TARGETS)}.\n"
        f"Recent conversation:\n{history or '(none)'}\n"
        f"Message: {message}"
    )
    try:
        reply = llm.complete([{"role": "user", "content": prompt}]).strip().upper()
    except Exception as exc:
        logger.warning("routing provider failed, using keyword table: %s", exc)
        return _keyword_route(message, registry)
    for target in TARGETS:
        if target in reply:
            return RoutingDecision(target=target, rationale="provider choice")
    logger.warning("provider returned no valid target (%r), using keyword table", reply)
    return _keyword_route(message, registry)
