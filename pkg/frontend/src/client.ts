// REST client for the session service, with revision-conflict awareness.

export interface SessionInfo {
  sessionId: string;
  revision: number;
  classes: string[];
  attributes: string[];
}

export interface SceneResponse {
  text: string;
  revision: number;
}

export type PutOutcome =
  | { kind: "ok"; revision: number; body: string }
  | { kind: "conflict"; currentRevision: number; body: string }
  | { kind: "invalid"; message: string; body: string };

export class ServiceError extends Error {
  constructor(message: string, public status: number) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ServiceClient {
  constructor(private base: string,
              private fetchFn: FetchLike = fetch.bind(globalThis)) {}

  private url(path: string): string {
    return `${this.base}${path}`;
  }

  async createSession(csv: string | Uint8Array,
                      params: Record<string, string> = {}): Promise<SessionInfo> {
    const query = new URLSearchParams(params).toString();
    const response = await this.fetchFn(
      this.url(`/sessions${query ? `?${query}` : ""}`),
      { method: "POST", body: csv as BodyInit },
    );
    const body = await response.text();
    if (response.status !== 201) {
      throw new ServiceError(`session upload failed: ${body}`, response.status);
    }
    const parsed = JSON.parse(body);
    return {
      sessionId: parsed.session_id,
      revision: parsed.revision,
      classes: parsed.classes,
      attributes: parsed.attributes,
    };
  }

  async getScene(sessionId: string, view: string): Promise<SceneResponse> {
    const response = await this.fetchFn(
      this.url(`/sessions/${sessionId}/scene?view=${encodeURIComponent(view)}`),
    );
    const text = await response.text();
    if (!response.ok) {
      throw new ServiceError(`scene request failed: ${text}`, response.status);
    }
    return { text, revision: Number(response.headers.get("X-Revision") ?? "0") };
  }

  /** Raw body text so the stats panel can show the service's own tokens. */
  async getStatsText(sessionId: string): Promise<string> {
    const response = await this.fetchFn(this.url(`/sessions/${sessionId}/stats`));
    const text = await response.text();
    if (!response.ok) {
      throw new ServiceError(`stats request failed: ${text}`, response.status);
    }
    return text;
  }

  private async put(path: string, payload: unknown): Promise<PutOutcome> {
    const response = await this.fetchFn(this.url(path), {
      method: "PUT",
      body: JSON.stringify(payload),
      headers: { "Content-Type": "application/json" },
    });
    const body = await response.text();
    if (response.ok) {
      return { kind: "ok", revision: JSON.parse(body).revision, body };
    }
    if (response.status === 409) {
      return {
        kind: "conflict",
        currentRevision: JSON.parse(body).current_revision,
        body,
      };
    }
    return { kind: "invalid", message: body, body };
  }

  putRule(sessionId: string, revision: number, rule: unknown): Promise<PutOutcome> {
    return this.put(`/sessions/${sessionId}/rule`, { revision, rule });
  }

  putModel(sessionId: string, revision: number,
           payload: Record<string, unknown>): Promise<PutOutcome> {
    return this.put(`/sessions/${sessionId}/model`, { revision, ...payload });
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.fetchFn(this.url(`/sessions/${sessionId}`), { method: "DELETE" });
  }
}
