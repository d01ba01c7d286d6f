// Typed client for the game service. The shapes mirror the service's
// published JSON schema; nothing here interprets game rules.

export type Player = "A" | "B";
export type Mode = "vs_bot" | "hot_seat";

export interface GameConfigDto {
  n: number;
  d: number;
}

export interface ApiEvent {
  seq: number;
  actor: Player;
  number: number;
  residue: number;
  ts: number;
}

export interface CrossedEntry {
  number: number;
  actor: Player;
}

export interface SessionView {
  id: string;
  config: GameConfigDto;
  mode: Mode;
  live: number[];
  residues: Record<string, number>;
  crossed: CrossedEntry[];
  superfluous: number[];
  to_move: Player | null;
  status: "live" | "finished";
  winner: Player | null;
  final_pair: [number, number] | null;
}

export interface VariantsResponse {
  vs_bot: GameConfigDto[];
  hot_seat: { min_n: number; min_d: number };
}

export interface MovesResponse {
  events: ApiEvent[];
  view: SessionView;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  httpStatus: number;
}

export class ApiError extends Error {
  readonly code: string;
  readonly httpStatus: number;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.name = "ApiError";
    this.code = body.code;
    this.httpStatus = body.httpStatus;
  }
}

export class Client {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    const data: unknown = await response.json();
    if (!response.ok) {
      throw new ApiError(data as ApiErrorBody);
    }
    return data as T;
  }

  variants(): Promise<VariantsResponse> {
    return this.request("/variants");
  }

  createGame(n: number, d: number, mode: Mode, seed = 0): Promise<SessionView> {
    return this.request("/games", {
      method: "POST",
      body: JSON.stringify({ n, d, mode, seed }),
    });
  }

  game(id: string): Promise<SessionView> {
    return this.request(`/games/${id}`);
  }

  move(id: string, number: number): Promise<MovesResponse> {
    return this.request(`/games/${id}/moves`, {
      method: "POST",
      body: JSON.stringify({ number }),
    });
  }

  events(id: string): Promise<{ events: ApiEvent[] }> {
    return this.request(`/games/${id}/events`);
  }
}
