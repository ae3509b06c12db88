// Browser glue: mounts the chat + canvas panes and wires the event
// delegation onto the pure renderers and state classes.

import { ApiClient } from "./api.js";
import { Canvas, ChatView } from "./state.js";
import {
  renderCanvas,
  renderInstallPanel,
  renderSweepTable,
  renderTranscript,
} from "./render.js";
import type { GridAxis } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

export function startApp(baseUrl = ""): void {
  const api = new ApiClient(baseUrl);
  const chat = new ChatView(`ui-${Date.now().toString(36)}`, api);
  const canvas = new Canvas();

  const transcriptEl = el<HTMLDivElement>("transcript");
  const canvasEl = el<HTMLDivElement>("canvas");
  const installEl = el<HTMLDivElement>("install-panel");
  const sweepEl = el<HTMLDivElement>("sweep-results");
  const inputEl = el<HTMLInputElement>("chat-input");
  const formEl = el<HTMLFormElement>("chat-form");
  const sweepFormEl = el<HTMLFormElement>("sweep-form");
  const statusEl = el<HTMLSpanElement>("health");

  const redraw = () => {
    transcriptEl.innerHTML = renderTranscript(chat.transcript, chat.pending);
    transcriptEl.scrollTop = transcriptEl.scrollHeight;
    canvasEl.innerHTML = renderCanvas(canvas.graph, canvas.selectedClassType);
    installEl.innerHTML = renderInstallPanel(canvas.installPanel);
  };

  const send = async (text: string) => {
    await chat.send(text);
    redraw();
  };

  formEl.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = inputEl.value;
    inputEl.value = "";
    void send(text).then(redraw);
    redraw();
  });

  transcriptEl.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const action = target.dataset["action"];
    if (action === "accept") {
      const index = Number(target.dataset["cardIndex"]);
      const candidate = chat.latestCandidates()[index];
      if (candidate) {
        canvas.accept(candidate);
        redraw();
      }
    } else if (action === "quick-reply" || action === "copy-prompt") {
      const value = target.dataset["value"] ?? "";
      if (action === "quick-reply") void send(value).then(redraw);
      else void navigator.clipboard?.writeText(value);
    } else if (action === "retry") {
      void chat.retry().then(redraw);
    } else if (action === "node-qa") {
      const cls = target.dataset["class"] ?? "";
      void send(`what does ${cls} do and which nodes fit downstream?`).then(redraw);
    }
    redraw();
  });

  canvasEl.addEventListener("click", (event) => {
    const target = (event.target as Element).closest<SVGElement>("[data-action='select-node']");
    if (!target) return;
    const cls = target.dataset["class"] ?? null;
    canvas.select(cls === canvas.selectedClassType ? null : cls);
    redraw();
  });

  el<HTMLButtonElement>("node-qa-shortcut").addEventListener("click", () => {
    if (canvas.selectedClassType) {
      // templated shortcut question for the selected node
      void send(
        `what does ${canvas.selectedClassType} do and which nodes fit downstream?`,
      ).then(redraw);
    }
  });

  sweepFormEl.addEventListener("submit", (event) => {
    event.preventDefault();
    if (!canvas.graph) return;
    const raw = el<HTMLInputElement>("sweep-axes").value;
    const axes: GridAxis[] = raw
      .split(";")
      .map((part) => part.trim())
      .filter(Boolean)
      .map((part) => {
        const [target, values] = part.split("=");
        const [nodeId, inputName] = target.split(".");
        return {
          node_id: nodeId.trim(),
          input_name: inputName.trim(),
          values: values.split(",").map((v) => {
            const n = Number(v);
            return Number.isNaN(n) ? v.trim() : n;
          }),
        };
      });
    void api
      .paramSearch(canvas.graph, axes)
      .then((result) => {
        sweepEl.innerHTML = renderSweepTable(result);
      })
      .catch((err) => {
        sweepEl.innerHTML = `<div class="card error">${String(err)}</div>`;
      });
  });

  void api
    .health()
    .then((h) => {
      statusEl.textContent = `KB: ${h.nodes} nodes, ${h.models} models, ${h.workflows} workflows ${h.offline ? "(offline mode)" : ""}`;
    })
    .catch(() => {
      statusEl.textContent = "service unreachable";
    });

  redraw();
}
