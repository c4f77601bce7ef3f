/** Thin typed client over the assistant service HTTP API. The UI never
 * touches pipeline state except through these endpoints. */

import type { Transcript, TurnView } from "./types";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      /* non-JSON error body; keep the status text */
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  async health(): Promise<{ status: string; doc_count: number }> {
    return asJson(await this.fetchImpl(`${this.baseUrl}/healthz`));
  }

  async createSession(): Promise<string> {
    const body = await asJson<{ session_id: string }>(
      await this.fetchImpl(`${this.baseUrl}/sessions`, { method: "POST" }),
    );
    return body.session_id;
  }

  async submitTurn(sessionId: string, query: string): Promise<TurnView> {
    return asJson(
      await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/turns`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ query }),
      }),
    );
  }

  async getTranscript(sessionId: string): Promise<Transcript> {
    return asJson(await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}`));
  }
}
