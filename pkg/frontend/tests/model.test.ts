import { describe, expect, it } from "vitest";

import type { SessionView } from "../src/api.js";
import {
  banner,
  defaultOverlays,
  initialState,
  statusLine,
} from "../src/model.js";

export function sampleView(patch: Partial<SessionView> = {}): SessionView {
  return {
    id: "t1",
    config: { n: 15, d: 7 },
    mode: "vs_bot",
    live: Array.from({ length: 15 }, (_, i) => i + 1),
    residues: Object.fromEntries(
      Array.from({ length: 15 }, (_, i) => [String(i + 1), (i + 1) % 7]),
    ),
    crossed: [],
    superfluous: [],
    to_move: "A",
    status: "live",
    winner: null,
    final_pair: null,
    ...patch,
  };
}

describe("banner", () => {
  it("is empty while the game runs", () => {
    expect(banner(sampleView())).toBe("");
  });

  it("spells out a divisible final pair", () => {
    const view = sampleView({
      status: "finished",
      winner: "A",
      final_pair: [6, 8],
      live: [6, 8],
      to_move: null,
    });
    expect(banner(view)).toBe("6 + 8 = 14, divisible by 7: A wins");
  });

  it("spells out a failed divisibility check", () => {
    const view = sampleView({
      status: "finished",
      winner: "B",
      final_pair: [9, 13],
      live: [9, 13],
      to_move: null,
    });
    expect(banner(view)).toBe("9 + 13 = 22, not divisible by 7: B wins");
  });
});

describe("overlay defaults", () => {
  it("hides superfluous marks against the bot", () => {
    expect(defaultOverlays("vs_bot")).toEqual({
      residues: true,
      superfluous: false,
    });
  });

  it("shows superfluous marks in hot seat", () => {
    expect(defaultOverlays("hot_seat")).toEqual({
      residues: true,
      superfluous: true,
    });
  });
});

describe("status line", () => {
  it("prompts for a variant with no game", () => {
    expect(statusLine(initialState())).toBe("pick a variant to start");
  });

  it("tracks busy and turn states", () => {
    const state = initialState();
    state.view = sampleView();
    expect(statusLine(state)).toBe("your turn");
    state.busy = true;
    expect(statusLine(state)).toBe("waiting for the reply");
    state.busy = false;
    state.view = sampleView({ mode: "hot_seat", to_move: "B" });
    expect(statusLine(state)).toBe("B to move");
  });
});
