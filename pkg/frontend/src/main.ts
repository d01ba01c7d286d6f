import { ApiError, Client } from "./api.js";
import type { Mode, VariantsResponse } from "./api.js";
import { renderBoard } from "./board.js";
import { banner, defaultOverlays, initialState, statusLine } from "./model.js";
import type { UiState } from "./model.js";

export interface UiHandle {
  state: UiState;
  client: Client;
  reloadVariants: () => Promise<void>;
}

function grab<T extends HTMLElement>(doc: Document, id: string): T {
  const el = doc.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

// Wires the static page to the service. Everything the page knows about a
// game comes from API responses; clicks are the only local input.
export async function setup(doc: Document, base = ""): Promise<UiHandle> {
  const client = new Client(base);
  const state = initialState();

  const picker = grab<HTMLFieldSetElement>(doc, "picker");
  const modeSelect = grab<HTMLSelectElement>(doc, "mode");
  const pickN = grab<HTMLSelectElement>(doc, "pick-n");
  const pickD = grab<HTMLSelectElement>(doc, "pick-d");
  const freeN = grab<HTMLInputElement>(doc, "free-n");
  const freeD = grab<HTMLInputElement>(doc, "free-d");
  const newGame = grab<HTMLButtonElement>(doc, "new-game");
  const retry = grab<HTMLButtonElement>(doc, "retry");
  const boardEl = grab<HTMLElement>(doc, "board");
  const bannerEl = grab<HTMLElement>(doc, "banner");
  const statusEl = grab<HTMLElement>(doc, "status");
  const noticeEl = grab<HTMLElement>(doc, "notice");
  const toggleResidues = grab<HTMLInputElement>(doc, "toggle-residues");
  const toggleSuperfluous = grab<HTMLInputElement>(doc, "toggle-superfluous");

  let catalogue: VariantsResponse | null = null;

  function render(): void {
    if (state.view) {
      renderBoard(boardEl, state.view, state.overlays, state.busy, onPick);
      bannerEl.textContent = banner(state.view);
    } else {
      boardEl.textContent = "";
      bannerEl.textContent = "";
    }
    statusEl.textContent = statusLine(state);
    noticeEl.textContent = state.notice;
  }

  function fillVariantSelects(): void {
    if (!catalogue) {
      return;
    }
    const sizes = [...new Set(catalogue.vs_bot.map((c) => c.n))].sort(
      (a, b) => a - b,
    );
    pickN.textContent = "";
    for (const n of sizes) {
      const option = doc.createElement("option");
      option.value = String(n);
      option.textContent = String(n);
      pickN.append(option);
    }
    fillDivisorSelect();
    freeN.min = String(catalogue.hot_seat.min_n);
    freeD.min = String(catalogue.hot_seat.min_d);
  }

  function fillDivisorSelect(): void {
    if (!catalogue) {
      return;
    }
    const n = Number(pickN.value);
    const divisors = catalogue.vs_bot
      .filter((c) => c.n === n)
      .map((c) => c.d)
      .sort((a, b) => a - b);
    pickD.textContent = "";
    for (const d of divisors) {
      const option = doc.createElement("option");
      option.value = String(d);
      option.textContent = String(d);
      pickD.append(option);
    }
  }

  async function reloadVariants(): Promise<void> {
    try {
      catalogue = await client.variants();
      picker.disabled = false;
      retry.hidden = true;
      state.notice = "";
      fillVariantSelects();
    } catch {
      catalogue = null;
      picker.disabled = true;
      retry.hidden = false;
      state.notice = "variant list unavailable";
    }
    render();
  }

  function syncModeVisibility(): void {
    const mode = modeSelect.value as Mode;
    doc.body.classList.toggle("mode-vs-bot", mode === "vs_bot");
    doc.body.classList.toggle("mode-hot-seat", mode === "hot_seat");
  }

  async function startGame(): Promise<void> {
    const mode = modeSelect.value as Mode;
    const n = mode === "vs_bot" ? Number(pickN.value) : Number(freeN.value);
    const d = mode === "vs_bot" ? Number(pickD.value) : Number(freeD.value);
    state.notice = "";
    try {
      state.view = await client.createGame(n, d, mode);
    } catch (error) {
      state.notice =
        error instanceof ApiError ? error.message : "service unreachable";
      render();
      return;
    }
    state.overlays = defaultOverlays(mode);
    toggleResidues.checked = state.overlays.residues;
    toggleSuperfluous.checked = state.overlays.superfluous;
    render();
  }

  async function onPick(picked: number): Promise<void> {
    const view = state.view;
    if (!view || state.busy || view.status === "finished") {
      return;
    }
    if (view.mode === "vs_bot" && view.to_move !== "A") {
      return;
    }
    state.busy = true;
    state.notice = "";
    render();
    try {
      const result = await client.move(view.id, picked);
      state.view = result.view;
    } catch (error) {
      if (error instanceof ApiError && error.code === "illegal_move") {
        state.notice = `${picked} cannot be crossed out`;
        boardEl.classList.add("shake");
        setTimeout(() => boardEl.classList.remove("shake"), 300);
      } else {
        state.notice =
          error instanceof ApiError ? error.message : "service unreachable";
      }
    } finally {
      state.busy = false;
      render();
    }
  }

  modeSelect.addEventListener("change", syncModeVisibility);
  pickN.addEventListener("change", fillDivisorSelect);
  newGame.addEventListener("click", () => void startGame());
  retry.addEventListener("click", () => void reloadVariants());
  toggleResidues.addEventListener("change", () => {
    state.overlays.residues = toggleResidues.checked;
    render();
  });
  toggleSuperfluous.addEventListener("change", () => {
    state.overlays.superfluous = toggleSuperfluous.checked;
    render();
  });

  syncModeVisibility();
  await reloadVariants();
  return { state, client, reloadVariants };
}
