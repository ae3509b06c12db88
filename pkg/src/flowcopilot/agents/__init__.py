"""Assistant/worker agent hierarchy with per-session short-term memory."""

from .assistant import AgentReply, Assistant, Attachment
from .router import RoutingDecision, route
from .session import ChatSession, SessionStore

__all__ = [
    "AgentReply",
    "Assistant",
    "Attachment",
    "ChatSession",
    "RoutingDecision",
    "SessionStore",
    "route",
]
