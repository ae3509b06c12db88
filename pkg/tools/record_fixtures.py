#!/usr/bin/env python3
"""Record API responses from the real service into frontend test fixtures.

Run from the repo root: python tools/record_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from flowcopilot.config import build_deps
from flowcopilot.service import create_app

ROOT = Path(__file__).resolve().parent.parent
KB_DIR = ROOT / "tests" / "fixtures" / "kb"
OUT = ROOT / "frontend" / "tests" / "fixtures"


def save(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(
        json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )
    print(f"recorded {name}")


def main() -> None:
    deps = build_deps(kb_dir=KB_DIR, offline=True)
    client = TestClient(create_app(deps))

    save("healthz.json", client.get("/healthz").json())

    reply = client.post(
        "/api/chat",
        json={"session_id": "rec-wf", "message": "I need a workflow for fast image upscaling"},
    ).json()
    save("chat_workflow_reply.json", reply)

    save(
        "chat_clarification.json",
        client.post(
            "/api/chat", json={"session_id": "rec-lora", "message": "recommend a lora"}
        ).json(),
    )
    client.post("/api/chat", json={"session_id": "rec-lora", "message": "I use SDXL"})
    save(
        "chat_lora_cards.json",
        client.post(
            "/api/chat", json={"session_id": "rec-lora", "message": "recommend a lora again"}
        ).json(),
    )

    save(
        "chat_node_qa.json",
        client.post(
            "/api/chat",
            json={"session_id": "rec-qa", "message": "what does KSampler's cfg do"},
        ).json(),
    )

    save(
        "chat_prompts.json",
        client.post(
            "/api/chat",
            json={"session_id": "rec-p", "message": "write a prompt for a cat"},
        ).json(),
    )

    save(
        "paramsearch_3x3.json",
        client.post(
            "/api/paramsearch",
            json={
                "workflow": json.loads((ROOT / "tests/fixtures/workflow_t2i.json").read_text()),
                "grid": {
                    "axes": [
                        {"node_id": "5", "input_name": "cfg", "values": [6, 7, 8]},
                        {"node_id": "5", "input_name": "denoise", "values": [0.4, 0.6, 0.8]},
                    ]
                },
            },
        ).json(),
    )

    save("node_ksampler.json", client.get("/api/nodes/KSampler").json())

    # a registry missing one node class: candidate #1 carries install hints
    broken_deps = build_deps(kb_dir=KB_DIR, offline=True)
    del broken_deps.kb.nodes["ImageUpscaleWithModel"]
    broken_client = TestClient(create_app(broken_deps))
    save(
        "chat_workflow_missing.json",
        broken_client.post(
            "/api/chat",
            json={
                "session_id": "rec-miss",
                "message": "I need a workflow for fast image upscaling",
            },
        ).json(),
    )


if __name__ == "__main__":
    main()
