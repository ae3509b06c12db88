// Pure HTML renderers. Every function maps payloads to markup with no
// side effects and no invented data: ids, class types, and URLs appear
// exactly as the API returned them (HTML-escaped).

import { DEFAULT_LAYOUT, layeredLayout } from "./layout.js";
import type { TranscriptEntry } from "./state.js";
import type {
  Attachment,
  MissingNode,
  SweepResult,
  WorkflowCandidate,
  WorkflowJson,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

const esc = escapeHtml;

// -- attachment cards ---------------------------------------------------------

function workflowCandidateCard(att: Attachment, index: number): string {
  const c = att.payload as unknown as WorkflowCandidate;
  const badge = c.report.pass
    ? '<span class="badge pass">pass</span>'
    : '<span class="badge fail">fails validation</span>';
  const missing =
    c.missing_nodes.length > 0
      ? `<div class="missing">missing: ${c.missing_nodes
          .map((m) => esc(m.class_type))
          .join(", ")}</div>`
      : "";
  return `<div class="card workflow-candidate" data-card-index="${index}">
  <div class="card-title">${esc(att.title)}</div>
  ${badge}
  <span class="node-count">${c.node_count} nodes</span>
  ${missing}
  <button data-action="accept" data-card-index="${index}">Accept</button>
</div>`;
}

function clarificationChip(att: Attachment): string {
  const question = String(att.payload["question"] ?? att.title);
  const options = (att.payload["options"] as string[] | undefined) ?? [];
  const replies = options
    .map(
      (opt) =>
        `<button class="quick-reply" data-action="quick-reply" data-value="${esc(opt)}">${esc(opt)}</button>`,
    )
    .join("");
  return `<div class="card clarification">
  <div class="question-chip">${esc(question)}</div>
  <div class="quick-replies">${replies}</div>
</div>`;
}

function nodeCard(att: Attachment): string {
  const p = att.payload;
  const classType = String(p["class_type"] ?? "");
  const repo = p["repo_url"] ? String(p["repo_url"]) : null;
  const stars = p["stars"] !== undefined ? `<span class="stars">★ ${Number(p["stars"])}</span>` : "";
  const downstream = (p["downstream"] as Array<{ class_type: string }> | undefined) ?? [];
  const chips = downstream
    .map(
      (d) =>
        `<button class="chip" data-action="node-qa" data-class="${esc(d.class_type)}">${esc(d.class_type)}</button>`,
    )
    .join("");
  return `<div class="card node-card" data-class="${esc(classType)}">
  <div class="card-title">${esc(att.title)}</div>
  <div class="description">${esc(String(p["description"] ?? ""))}</div>
  ${stars}
  ${repo ? `<a href="${esc(repo)}" target="_blank" rel="noreferrer">repository</a>` : ""}
  ${chips ? `<div class="downstream">${chips}</div>` : ""}
</div>`;
}

function modelCard(att: Attachment): string {
  const p = att.payload;
  const base = p["base_model"] ? `<span class="base-model">${esc(String(p["base_model"]))}</span>` : "";
  return `<div class="card model-card" data-model-id="${esc(String(p["id"] ?? ""))}">
  <div class="card-title">${esc(att.title)}</div>
  <div class="description">${esc(String(p["description"] ?? ""))}</div>
  <span class="kind">${esc(String(p["kind"] ?? ""))}</span> ${base}
  <span class="stats">↓ ${Number(p["downloads"] ?? 0)} · ▲ ${Number(p["upvotes"] ?? 0)}</span>
</div>`;
}

function installGuideCard(att: Attachment): string {
  const p = att.payload;
  const repo = p["repo_url"] ? String(p["repo_url"]) : null;
  return `<div class="card install-guide">
  <div class="card-title">${esc(att.title)}</div>
  ${repo ? `<a href="${esc(repo)}" target="_blank" rel="noreferrer">${esc(repo)}</a>` : ""}
</div>`;
}

function promptVariantsCard(att: Attachment): string {
  const variants = (att.payload["variants"] as string[] | undefined) ?? [];
  const items = variants
    .map((v) => `<li><code>${esc(v)}</code> <button data-action="copy-prompt" data-value="${esc(v)}">copy</button></li>`)
    .join("");
  return `<div class="card prompt-variants"><ul>${items}</ul></div>`;
}

function errorCard(att: Attachment): string {
  return `<div class="card error">
  <div class="card-title">${esc(att.title)}</div>
  <div class="detail">${esc(String(att.payload["detail"] ?? ""))}</div>
</div>`;
}

export function renderAttachment(att: Attachment, index: number): string {
  switch (att.kind) {
    case "workflow-candidate":
      return workflowCandidateCard(att, index);
    case "clarification":
      return clarificationChip(att);
    case "node-card":
      return nodeCard(att);
    case "model-card":
      return modelCard(att);
    case "install-guide":
      return installGuideCard(att);
    case "prompt-variants":
      return promptVariantsCard(att);
    case "error":
      return errorCard(att);
    default:
      return `<div class="card">${esc(att.title)}</div>`;
  }
}

// -- transcript ------------------------------------------------------------------

export function renderTranscript(entries: TranscriptEntry[], pending: boolean): string {
  const rows = entries.map((entry) => {
    const cards = entry.attachments.map((a, i) => renderAttachment(a, i)).join("\n");
    const retry = entry.failed
      ? '<button data-action="retry" class="retry">Retry</button>'
      : "";
    return `<div class="message ${entry.role}${entry.failed ? " failed" : ""}">
  <div class="text">${esc(entry.text)}</div>
  ${cards}
  ${retry}
</div>`;
  });
  if (pending) rows.push('<div class="message assistant pending">…</div>');
  return rows.join("\n");
}

// -- canvas -------------------------------------------------------------------------

export function renderCanvas(graph: WorkflowJson | null, selected: string | null): string {
  if (graph === null) return '<div class="canvas-empty">No workflow loaded.</div>';
  const layout = layeredLayout(graph);
  const { nodeWidth, nodeHeight } = DEFAULT_LAYOUT;
  const edges = layout.edges
    .map(
      (e) =>
        `<path class="edge" d="M ${e.x1} ${e.y1} C ${e.x1 + 35} ${e.y1}, ${e.x2 - 35} ${e.y2}, ${e.x2} ${e.y2}"/>`,
    )
    .join("\n");
  const nodes = layout.nodes
    .map((n) => {
      const cls = n.classType === selected ? "node selected" : "node";
      return `<g class="${cls}" data-action="select-node" data-class="${esc(n.classType)}" data-node-id="${esc(n.id)}" transform="translate(${n.x},${n.y})">
  <rect width="${nodeWidth}" height="${nodeHeight}" rx="8"/>
  <text x="10" y="26" class="node-class">${esc(n.classType)}</text>
  <text x="10" y="48" class="node-id">#${esc(n.id)}</text>
</g>`;
    })
    .join("\n");
  return `<svg viewBox="0 0 ${layout.width + 20} ${layout.height + 20}" width="100%">
${edges}
${nodes}
</svg>`;
}

export function renderInstallPanel(missing: MissingNode[]): string {
  if (missing.length === 0) return "";
  const rows = missing
    .map(
      (m) =>
        `<li><code>${esc(m.class_type)}</code> ${
          m.repo_url
            ? `<a href="${esc(m.repo_url)}" target="_blank" rel="noreferrer">${esc(m.repo_url)}</a>`
            : "(no repository known)"
        }</li>`,
    )
    .join("");
  return `<div class="install-panel">
  <div class="panel-title">Missing nodes — install these first</div>
  <ul>${rows}</ul>
</div>`;
}

// -- parameter sweep ----------------------------------------------------------------

export function renderSweepTable(result: SweepResult): string {
  const cells = result.runs
    .map((run) => {
      const combo = Object.entries(run.combo)
        .map(([key, value]) => `${esc(key)}=${esc(String(value))}`)
        .join(", ");
      const outputs = run.outputs
        .map((o) => `<a href="${esc(o)}">${esc(o)}</a>`)
        .join(" ");
      return `<div class="sweep-cell ${run.status}">
  <div class="combo">${combo}</div>
  <div class="status">${esc(run.status)}</div>
  <div class="outputs">${outputs}</div>
</div>`;
    })
    .join("\n");
  return `<div class="sweep-table" data-cells="${result.runs.length}">${cells}</div>`;
}
