/**
 * Typed client for the annotation-service HTTP API.
 *
 * The service owns all labeling logic; this client only moves TaskCards and
 * votes across the wire. Submission errors are split into ApiError (the
 * server rejected the request: stale token, bad label) and NetworkError
 * (the request never completed and may be retried with the same token).
 */

export interface TaskCardContext {
  image_ref: string;
  question: string;
  steps: string[];
  step_index: number;
  current_step: string | null;
  previous_steps: string[];
  triggering_label?: string | null;
}

export interface TaskCard {
  annotator_id: string;
  record_id: string;
  step_index: number;
  task: string;
  token: string;
  allowed_labels: string[];
  context: TaskCardContext;
  progress: { votes_cast: number; records_total: number };
}

export type TaskResponse = { done: true } | { done: false; card: TaskCard };

export interface Ack {
  token: string;
  accepted: boolean;
  duplicate: boolean;
}

export interface ProgressSnapshot {
  votes: number;
  votes_per_task: Record<string, number>;
  ties_per_task: Record<string, number>;
  agreement: Record<string, { s_score: number; observed_agreement: number; items: number }>;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export class NetworkError extends Error {
  constructor(cause: unknown) {
    super(`request failed: ${String(cause)}`);
    this.name = "NetworkError";
  }
}

async function readDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body);
  } catch {
    return response.statusText;
  }
}

export class AnnotationApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  private async get<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await fetch(this.url(path));
    } catch (cause) {
      throw new NetworkError(cause);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await readDetail(response));
    }
    return (await response.json()) as T;
  }

  async nextTask(annotator: string): Promise<TaskResponse> {
    return this.get<TaskResponse>(`/api/task?annotator=${encodeURIComponent(annotator)}`);
  }

  async submitLabel(annotator: string, token: string, label: string): Promise<Ack> {
    let response: Response;
    try {
      response = await fetch(this.url("/api/label"), {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ annotator, token, label }),
      });
    } catch (cause) {
      throw new NetworkError(cause);
    }
    if (!response.ok) {
      throw new ApiError(response.status, await readDetail(response));
    }
    return (await response.json()) as Ack;
  }

  async progress(): Promise<ProgressSnapshot> {
    return this.get<ProgressSnapshot>("/api/progress");
  }

  imageUrl(recordId: string): string {
    return this.url(`/api/image/${encodeURIComponent(recordId)}`);
  }
}
