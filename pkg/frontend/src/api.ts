// Thin client over the service HTTP API. The fetch implementation is
// injectable so contract tests can replay recorded responses.

import type { AgentReply, GridAxis, Health, SweepResult, WorkflowJson } from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly kind: string,
    readonly detail: string,
    readonly status: number,
  ) {
    super(`${kind}: ${detail}`);
  }
}

async function parseError(resp: Response): Promise<ApiError> {
  try {
    const body = (await resp.json()) as { error?: { kind?: string; detail?: string } };
    return new ApiError(
      body.error?.kind ?? "http-error",
      body.error?.detail ?? resp.statusText,
      resp.status,
    );
  } catch {
    return new ApiError("http-error", resp.statusText, resp.status);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (...args) => fetch(...args),
  ) {}

  private async post<T>(path: string, payload: unknown): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  private async get<T>(path: string): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path);
    if (!resp.ok) throw await parseError(resp);
    return (await resp.json()) as T;
  }

  chat(sessionId: string, message: string): Promise<AgentReply> {
    return this.post("/api/chat", { session_id: sessionId, message });
  }

  paramSearch(
    workflow: WorkflowJson,
    axes: GridAxis[],
    parallelism = 4,
  ): Promise<SweepResult> {
    return this.post("/api/paramsearch", { workflow, grid: { axes }, parallelism });
  }

  nodeInfo(classType: string): Promise<Record<string, unknown>> {
    return this.get(`/api/nodes/${encodeURIComponent(classType)}`);
  }

  health(): Promise<Health> {
    return this.get("/healthz");
  }
}
