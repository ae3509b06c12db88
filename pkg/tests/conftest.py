"""Shared fixtures: hermetic network guard, fixture KB, offline deps."""

import os
import socket
from pathlib import Path

import pytest

# The whole suite runs offline; individual tests construct non-offline
# scripted providers explicitly where they emulate a live backend.
os.environ.setdefault("COPILOT_OFFLINE", "1")

from flowcopilot.config import build_deps  # noqa: E402
from flowcopilot.kb import KnowledgeBase  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"
KB_DIR = FIXTURES / "kb"


@pytest.fixture(autouse=True)
def no_network(monkeypatch):
    """Instrumented transport guard: any socket connect fails the test."""

    def _blocked(*args, **kwargs):
        raise AssertionError("network access attempted during hermetic tests")

    monkeypatch.setattr(socket.socket, "connect", _blocked)
    monkeypatch.setattr(socket.socket, "connect_ex", _blocked)
    monkeypatch.setattr(socket, "create_connection", _blocked)


@pytest.fixture(scope="session")
def kb_dir() -> Path:
    return KB_DIR


@pytest.fixture()
def kb() -> KnowledgeBase:
    return KnowledgeBase(KB_DIR)


@pytest.fixture()
def deps():
    return build_deps(kb_dir=KB_DIR, offline=True)


@pytest.fixture()
def t2i_path() -> Path:
    return FIXTURES / "workflow_t2i.json"
