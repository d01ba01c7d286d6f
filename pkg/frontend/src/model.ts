import type { Mode, SessionView } from "./api.js";

export interface Overlays {
  residues: boolean;
  superfluous: boolean;
}

// Superfluous badges reveal which numbers are strategically dead, so they
// stay off against the bot and on in the hot-seat teaching setup.
export function defaultOverlays(mode: Mode): Overlays {
  return { residues: true, superfluous: mode === "hot_seat" };
}

export interface UiState {
  view: SessionView | null;
  overlays: Overlays;
  busy: boolean; // one move request in flight; the board is locked meanwhile
  notice: string;
}

export function initialState(): UiState {
  return {
    view: null,
    overlays: { residues: true, superfluous: false },
    busy: false,
    notice: "",
  };
}

export function banner(view: SessionView): string {
  if (view.status !== "finished" || !view.final_pair || !view.winner) {
    return "";
  }
  const [x, y] = view.final_pair;
  const sum = x + y;
  const d = view.config.d;
  const verdict = sum % d === 0 ? `divisible by ${d}` : `not divisible by ${d}`;
  return `${x} + ${y} = ${sum}, ${verdict}: ${view.winner} wins`;
}

export function statusLine(state: UiState): string {
  const view = state.view;
  if (!view) {
    return "pick a variant to start";
  }
  if (view.status === "finished") {
    return "game over";
  }
  if (state.busy) {
    return "waiting for the reply";
  }
  if (view.mode === "vs_bot") {
    return view.to_move === "A" ? "your turn" : "bot to move";
  }
  return `${view.to_move} to move`;
}
