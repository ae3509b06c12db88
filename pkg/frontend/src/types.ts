// Wire types mirroring the flowcopilot service responses.

export type Role = "user" | "assistant";

export type AttachmentKind =
  | "workflow-candidate"
  | "node-card"
  | "model-card"
  | "install-guide"
  | "prompt-variants"
  | "param-grid-result"
  | "clarification"
  | "error";

export interface Attachment {
  kind: AttachmentKind;
  title: string;
  payload: Record<string, unknown>;
}

export interface AgentReply {
  text: string;
  attachments: Attachment[];
}

export type InputValue = string | number | boolean | [string, number];

export interface WorkflowNode {
  class_type: string;
  inputs: Record<string, InputValue>;
}

export type WorkflowJson = Record<string, WorkflowNode>;

export interface ValidationIssue {
  severity: "error" | "warning";
  kind: string;
  node_id: string | null;
  detail: string;
  install_hint: string | null;
}

export interface ValidationReport {
  pass: boolean;
  issues: ValidationIssue[];
}

export interface MissingNode {
  class_type: string;
  repo_url: string | null;
}

export interface WorkflowCandidate {
  source: "retrieved" | "synthesized";
  entry_ref: string | null;
  title: string;
  graph: WorkflowJson;
  code: string;
  report: ValidationReport;
  missing_nodes: MissingNode[];
  node_count: number;
}

export interface GridAxis {
  node_id: string;
  input_name: string;
  values: Array<string | number | boolean>;
}

export interface SweepRun {
  combo: Record<string, string | number | boolean>;
  status: "done" | "failed" | "aborted";
  outputs: string[];
}

export interface SweepResult {
  runs: SweepRun[];
}

export interface Health {
  nodes: number;
  models: number;
  workflows: number;
  offline: boolean;
}

export function isEdge(value: InputValue): value is [string, number] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    typeof value[0] === "string" &&
    typeof value[1] === "number"
  );
}
