// View state: chat transcript with one in-flight request per session,
// and the canvas that candidate workflows are accepted onto.

import type { ApiClient } from "./api.js";
import type { Attachment, MissingNode, WorkflowCandidate, WorkflowJson } from "./types.js";

export interface TranscriptEntry {
  role: "user" | "assistant";
  text: string;
  attachments: Attachment[];
  failed?: boolean;
}

export class ChatView {
  transcript: TranscriptEntry[] = [];
  pending = false;
  private lastFailedMessage: string | null = null;

  constructor(
    readonly sessionId: string,
    private readonly api: ApiClient,
  ) {}

  /** Sends a message unless one is already in flight. */
  async send(message: string): Promise<void> {
    if (this.pending || !message.trim()) return;
    this.pending = true;
    this.transcript.push({ role: "user", text: message, attachments: [] });
    try {
      const reply = await this.api.chat(this.sessionId, message);
      this.transcript.push({
        role: "assistant",
        text: reply.text,
        attachments: reply.attachments,
      });
      this.lastFailedMessage = null;
    } catch (err) {
      // keep the transcript, surface a retry affordance
      this.lastFailedMessage = message;
      this.transcript.push({
        role: "assistant",
        text: `Request failed: ${err instanceof Error ? err.message : String(err)}`,
        attachments: [],
        failed: true,
      });
    } finally {
      this.pending = false;
    }
  }

  get canRetry(): boolean {
    return this.lastFailedMessage !== null;
  }

  async retry(): Promise<void> {
    if (this.lastFailedMessage === null) return;
    const message = this.lastFailedMessage;
    this.lastFailedMessage = null;
    // drop the failure marker entries so the retried exchange reads cleanly
    this.transcript = this.transcript.filter(
      (entry) => !(entry.failed || (entry.role === "user" && entry.text === message)),
    );
    await this.send(message);
  }

  /** Workflow candidates of the latest assistant reply, newest first. */
  latestCandidates(): WorkflowCandidate[] {
    for (let i = this.transcript.length - 1; i >= 0; i--) {
      const entry = this.transcript[i];
      if (entry.role !== "assistant") continue;
      const cards = entry.attachments.filter((a) => a.kind === "workflow-candidate");
      if (cards.length > 0) {
        return cards.map((a) => a.payload as unknown as WorkflowCandidate);
      }
    }
    return [];
  }
}

export class Canvas {
  graph: WorkflowJson | null = null;
  selectedClassType: string | null = null;
  installPanel: MissingNode[] = [];
  acceptedRef: string | null = null;

  /** Replaces the canvas atomically with the accepted candidate. */
  accept(candidate: WorkflowCandidate): void {
    this.graph = candidate.graph;
    this.installPanel = candidate.missing_nodes ?? [];
    this.acceptedRef = candidate.entry_ref;
    this.selectedClassType = null;
  }

  select(classType: string | null): void {
    this.selectedClassType = classType;
  }

  get showInstallPanel(): boolean {
    return this.installPanel.length > 0;
  }
}
