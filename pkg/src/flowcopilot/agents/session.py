"""Sliding-window chat sessions and the TTL-evicting in-memory store."""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field


@dataclass
class Message:
    role: str  # user | assistant | system
    content: str
    ts: float = field(default_factory=time.time)


class ChatSession:
    """Append-only message window; the oldest messages fall off the end."""

    def __init__(self, session_id: str, max_messages: int = 40):
        self.session_id = session_id
        self.max_messages = max_messages
        self.messages: list[Message] = []
        self.last_activity = time.time()
        self.lock = threading.Lock()

    def append(self, role: str, content: str) -> None:
        self.messages.append(Message(role=role, content=content))
        if len(self.messages) > self.max_messages:
            del self.messages[: len(self.messages) - self.max_messages]
        self.last_activity = time.time()

    def tail(self, n: int = 10) -> list[Message]:
        return self.messages[-n:]

    def __len__(self) -> int:
        return len(self.messages)


class SessionStore:
    """Thread-safe session registry with idle-TTL eviction (default 1 h)."""

    def __init__(self, ttl: float = 3600.0, max_messages: int = 40):
        self.ttl = ttl
        self.max_messages = max_messages
        self._sessions: dict[str, ChatSession] = {}
        self._lock = threading.Lock()

    def get_or_create(self, session_id: str) -> ChatSession:
        now = time.time()
        with self._lock:
            expired = [
                sid
                for sid, s in self._sessions.items()
                if now - s.last_activity > self.ttl
            ]
            for sid in expired:
                del self._sessions[sid]
            session = self._sessions.get(session_id)
            if session is None:
                session = ChatSession(session_id, max_messages=self.max_messages)
                self._sessions[session_id] = session
            return session

    def __len__(self) -> int:
        return len(self._sessions)
