// Chat view state: in-flight limiting, failure + retry affordance.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { ChatView } from "../src/state.js";
import type { AgentReply } from "../src/types.js";
import { failingServer, fixture, recordedServer } from "./fixtures.js";

const clarification = fixture<AgentReply>("chat_clarification.json");
const loraCards = fixture<AgentReply>("chat_lora_cards.json");


describe("ChatView", () => {
  it("appends user and assistant entries in order", async () => {
    const api = new ApiClient("", recordedServer({ "/api/chat": clarification }));
    const chat = new ChatView("s", api);
    await chat.send("recommend a lora");
    expect(chat.transcript.map((e) => e.role)).toEqual(["user", "assistant"]);
    expect(chat.transcript[1].attachments[0].kind).toBe("clarification");
  });

  it("allows only one in-flight request per session", async () => {
    let resolveFetch: (() => void) | null = null;
    const api = new ApiClient("", async () => {
      await new Promise<void>((resolve) => {
        resolveFetch = resolve;
      });
      return new Response(JSON.stringify(clarification), {
        status: 200,
        headers: { "Content-Type": "application/json" },
      });
    });
    const chat = new ChatView("s", api);
    const inflight = chat.send("first");
    expect(chat.pending).toBe(true);
    await chat.send("second (dropped)");
    expect(chat.transcript.filter((e) => e.role === "user")).toHaveLength(1);
    resolveFetch!();
    await inflight;
    expect(chat.pending).toBe(false);
    expect(chat.transcript).toHaveLength(2);
  });

  it("keeps the transcript and offers retry on network failure", async () => {
    const chat = new ChatView("s", new ApiClient("", failingServer()));
    await chat.send("hello?");
    expect(chat.transcript.at(-1)?.failed).toBe(true);
    expect(chat.canRetry).toBe(true);
  });

  it("retry resends the failed message", async () => {
    let fail = true;
    const api = new ApiClient("", async (url, init) => {
      if (fail) throw new TypeError("fetch failed");
      expect(JSON.parse(String(init?.body)).message).toBe("hello?");
      return new Response(JSON.stringify(loraCards), {
        status: 200,
        headers: { "Content-Type": "application/json" },
      });
    });
    const chat = new ChatView("s", api);
    await chat.send("hello?");
    fail = false;
    await chat.retry();
    expect(chat.canRetry).toBe(false);
    expect(chat.transcript.some((e) => e.failed)).toBe(false);
    expect(chat.transcript.at(-1)?.attachments[0]?.kind).toBe("model-card");
  });

  it("surfaces the latest workflow candidates", async () => {
    const reply = fixture<AgentReply>("chat_workflow_reply.json");
    const api = new ApiClient("", recordedServer({ "/api/chat": reply }));
    const chat = new ChatView("s", api);
    await chat.send("upscale");
    expect(chat.latestCandidates()).toHaveLength(3);
    expect(chat.latestCandidates()[0].entry_ref).toBe("wf-upscale");
  });
});
