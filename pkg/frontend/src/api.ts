// Typed client for the game-service HTTP API. The service is the only
// source of truth; this module never interprets game rules itself.

export interface MoveRecord {
  side: "G" | "H";
  vertex: number;
  by: "human" | "engine";
}

export interface SessionState {
  id: string;
  g: string;
  h: string;
  role: "Spoiler" | "Duplicator";
  k: number;
  alt: number | null;
  history: MoveRecord[];
  position: [number, number][];
  pending: [number, number] | null;
  status: "awaiting-human" | "spoiler-won" | "duplicator-won";
  round: number;
}

export interface Hint {
  side: "G" | "H";
  vertex: number;
  value: number | null;
}

export interface Analysis {
  budget: number;
  pending?: [number, number] | null;
  hints: Hint[];
}

export interface CreateRequest {
  g: string;
  h: string;
  role: "Spoiler" | "Duplicator";
  k: number;
  alt?: number | null;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (...a) => fetch(...a),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    let body: unknown = null;
    try {
      body = await res.json();
    } catch {
      body = null;
    }
    if (!res.ok) {
      const detail =
        body && typeof body === "object" && "detail" in body
          ? String((body as { detail: unknown }).detail)
          : res.statusText;
      throw new ApiError(res.status, detail);
    }
    return body as T;
  }

  async createSession(req: CreateRequest): Promise<string> {
    const out = await this.request<{ id: string }>("/sessions", {
      method: "POST",
      body: JSON.stringify(req),
    });
    return out.id;
  }

  getSession(id: string): Promise<SessionState> {
    return this.request(`/sessions/${id}`);
  }

  postMove(
    id: string,
    side: "G" | "H",
    vertex: number,
  ): Promise<SessionState> {
    return this.request(`/sessions/${id}/moves`, {
      method: "POST",
      body: JSON.stringify({ side, vertex }),
    });
  }

  getAnalysis(id: string): Promise<Analysis> {
    return this.request(`/sessions/${id}/analysis`);
  }
}
