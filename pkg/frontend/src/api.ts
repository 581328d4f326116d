import type {
  AnswerResponse,
  FamilyResponse,
  NextResponse,
  SessionConfig,
  StateResponse,
} from './types.js';

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) detail = body.detail;
    } catch {
      // keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

/** Thin typed client for the session service. */
export class SessionApi {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  async createSession(config: SessionConfig): Promise<string> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(config),
    });
    const body = await asJson<{ id: string }>(res);
    return body.id;
  }

  async next(sessionId: string): Promise<NextResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/next`);
    return asJson<NextResponse>(res);
  }

  /**
   * Post an answer, retrying once on network failure.  The service treats an
   * identical re-post as a duplicate and acknowledges it without changing
   * state, so the retry is safe even when the first attempt actually landed.
   */
  async answer(sessionId: string, queryId: number, answer: 'yes' | 'no'):
      Promise<AnswerResponse> {
    const post = () => this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/answer`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({ query_id: queryId, answer }),
    });
    let res: Response;
    try {
      res = await post();
    } catch {
      res = await post();
    }
    return asJson<AnswerResponse>(res);
  }

  async state(sessionId: string): Promise<StateResponse> {
    const res = await this.fetchImpl(`${this.baseUrl}/sessions/${sessionId}/state`);
    return asJson<StateResponse>(res);
  }

  async family(sessionId: string, limit: number): Promise<FamilyResponse> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${sessionId}/family?limit=${limit}`,
    );
    return asJson<FamilyResponse>(res);
  }

  async exportRules(sessionId: string): Promise<string> {
    const res = await this.fetchImpl(
      `${this.baseUrl}/sessions/${sessionId}/export?format=rules`,
    );
    if (!res.ok) throw new ApiError(res.status, res.statusText);
    return res.text();
  }
}
