// Contract tests against recorded service responses: the UI renders
// exactly what the API said, accepts candidates onto the canvas, and
// lays out sweeps in enumeration order.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { Canvas, ChatView } from "../src/state.js";
import {
  renderCanvas,
  renderInstallPanel,
  renderSweepTable,
  renderTranscript,
} from "../src/render.js";
import type { AgentReply, SweepResult, WorkflowCandidate } from "../src/types.js";
import { fixture, fixtureRaw, recordedServer } from "./fixtures.js";

const workflowReply = fixture<AgentReply>("chat_workflow_reply.json");
const missingReply = fixture<AgentReply>("chat_workflow_missing.json");
const sweep = fixture<SweepResult>("paramsearch_3x3.json");

function chatWith(reply: AgentReply): ChatView {
  const api = new ApiClient("", recordedServer({ "/api/chat": reply }));
  return new ChatView("test-session", api);
}

describe("workflow reply rendering", () => {
  it("renders one card per workflow candidate (three here)", async () => {
    const chat = chatWith(workflowReply);
    await chat.send("I need a workflow for fast image upscaling");
    const html = renderTranscript(chat.transcript, chat.pending);
    const cards = html.match(/class="card workflow-candidate"/g) ?? [];
    expect(cards).toHaveLength(3);
    expect(html).toContain("data-action=\"accept\"");
  });

  it("shows title, pass badge, and node count straight from the payload", async () => {
    const chat = chatWith(workflowReply);
    await chat.send("upscaling please");
    const html = renderTranscript(chat.transcript, chat.pending);
    for (const att of workflowReply.attachments) {
      const payload = att.payload as unknown as WorkflowCandidate;
      expect(html).toContain(att.title);
      expect(html).toContain(`${payload.node_count} nodes`);
    }
    expect(html).toContain("badge pass");
  });

  it("never fabricates ids, classes, or URLs", async () => {
    const chat = chatWith(workflowReply);
    await chat.send("upscaling");
    const html = renderTranscript(chat.transcript, chat.pending);
    const raw = fixtureRaw("chat_workflow_reply.json");
    for (const match of html.matchAll(/data-card-index="(\d+)"/g)) {
      expect(Number(match[1])).toBeLessThan(workflowReply.attachments.length);
    }
    for (const match of html.matchAll(/href="([^"]+)"/g)) {
      expect(raw).toContain(match[1]);
    }
  });
});

describe("accepting a candidate", () => {
  it("swaps the canvas atomically and records the entry ref", () => {
    const canvas = new Canvas();
    const first = workflowReply.attachments[0].payload as unknown as WorkflowCandidate;
    canvas.accept(first);
    expect(canvas.graph).toEqual(first.graph);
    expect(canvas.acceptedRef).toBe(first.entry_ref);
    expect(canvas.showInstallPanel).toBe(false);
    expect(renderInstallPanel(canvas.installPanel)).toBe("");

    const second = workflowReply.attachments[1].payload as unknown as WorkflowCandidate;
    canvas.accept(second);
    expect(canvas.graph).toEqual(second.graph);
    expect(canvas.acceptedRef).toBe(second.entry_ref);
  });

  it("shows the install panel iff missing_nodes is non-empty", () => {
    const canvas = new Canvas();
    const broken = missingReply.attachments[0].payload as unknown as WorkflowCandidate;
    expect(broken.missing_nodes.length).toBeGreaterThan(0);
    canvas.accept(broken);
    expect(canvas.showInstallPanel).toBe(true);
    const html = renderInstallPanel(canvas.installPanel);
    for (const missing of broken.missing_nodes) {
      expect(html).toContain(missing.class_type);
      expect(html).toContain(missing.repo_url!);
    }

    const fine = missingReply.attachments[1].payload as unknown as WorkflowCandidate;
    expect(fine.missing_nodes).toHaveLength(0);
    canvas.accept(fine);
    expect(canvas.showInstallPanel).toBe(false);
  });

  it("renders every accepted node on the canvas", () => {
    const canvas = new Canvas();
    const first = workflowReply.attachments[0].payload as unknown as WorkflowCandidate;
    canvas.accept(first);
    const svg = renderCanvas(canvas.graph, null);
    for (const [id, node] of Object.entries(first.graph)) {
      expect(svg).toContain(`data-node-id="${id}"`);
      expect(svg).toContain(node.class_type);
    }
  });
});

describe("parameter sweep table", () => {
  it("has exactly product-size cells in enumeration order", () => {
    expect(sweep.runs).toHaveLength(9);
    const html = renderSweepTable(sweep);
    expect(html).toContain('data-cells="9"');
    const cells = html.match(/class="sweep-cell/g) ?? [];
    expect(cells).toHaveLength(9);
    // enumeration order: cfg is the outer axis, denoise the inner one
    const combos = [...html.matchAll(/<div class="combo">([^<]+)<\/div>/g)].map((m) => m[1]);
    const expected = [];
    for (const cfg of [6, 7, 8]) {
      for (const denoise of [0.4, 0.6, 0.8]) {
        expected.push(`5.cfg=${cfg}, 5.denoise=${denoise}`);
      }
    }
    expect(combos).toEqual(expected);
  });

  it("marks each cell with its run status", () => {
    const html = renderSweepTable(sweep);
    for (const run of sweep.runs) {
      expect(html).toContain(`sweep-cell ${run.status}`);
    }
  });
});

describe("end-to-end against the recorded server", () => {
  it("posts a sweep and renders its result", async () => {
    const api = new ApiClient("", recordedServer({ "/api/paramsearch": sweep }));
    const first = workflowReply.attachments[0].payload as unknown as WorkflowCandidate;
    const result = await api.paramSearch(first.graph, [
      { node_id: "5", input_name: "cfg", values: [6, 7, 8] },
      { node_id: "5", input_name: "denoise", values: [0.4, 0.6, 0.8] },
    ]);
    expect(renderSweepTable(result)).toContain('data-cells="9"');
  });
});
