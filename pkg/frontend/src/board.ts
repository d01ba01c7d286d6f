import type { SessionView } from "./api.js";
import type { Overlays } from "./model.js";

// Renders the full 1..n board. Crossed cells keep their number visible and
// carry the color of whoever crossed them; everything else is a button.
export function renderBoard(
  root: HTMLElement,
  view: SessionView,
  overlays: Overlays,
  locked: boolean,
  onPick: (picked: number) => void,
): void {
  root.textContent = "";
  const crossedBy = new Map(view.crossed.map((c) => [c.number, c.actor]));
  const superfluous = new Set(view.superfluous);
  for (let a = 1; a <= view.config.n; a++) {
    const cell = document.createElement("button");
    cell.type = "button";
    cell.className = "cell";
    cell.dataset.number = String(a);

    const label = document.createElement("span");
    label.className = "number";
    label.textContent = String(a);
    cell.append(label);

    if (overlays.residues) {
      const badge = document.createElement("sub");
      badge.className = "residue";
      // crossed numbers fall back to plain display arithmetic; the server
      // only reports residues for live numbers
      badge.textContent = String(
        view.residues[String(a)] ?? a % view.config.d,
      );
      cell.append(badge);
    }

    const actor = crossedBy.get(a);
    if (actor !== undefined) {
      cell.classList.add("crossed", actor === "A" ? "by-a" : "by-b");
      cell.disabled = true;
    } else {
      if (overlays.superfluous && superfluous.has(a)) {
        cell.classList.add("superfluous");
      }
      cell.disabled = locked || view.status === "finished";
      cell.addEventListener("click", () => onPick(a));
    }
    root.append(cell);
  }
}
