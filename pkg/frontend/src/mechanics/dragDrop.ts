// Zone labeling: pick up a label, drop it on its zone. Keyboard flow is
// select-then-place, which shares the same action data.

import type { MechanicPlugin } from "../registry.js";
import type { DragDropSpec, SceneUnit } from "../types.js";

interface DragState {
  placed: string[];
}

function spec(unit: SceneUnit): DragDropSpec {
  return unit.interaction_spec as unknown as DragDropSpec;
}

export const dragDropPlugin: MechanicPlugin = {
  type: "drag_drop",

  init(): DragState {
    return { placed: [] };
  },

  evaluate(unit, rawState, data) {
    const state = rawState as DragState;
    const label = String(data.label ?? "");
    const zone = String(data.zone ?? "");
    if (state.placed.includes(label)) {
      return {
        accepted: false,
        correct: false,
        elementLabel: label,
        feedback: `${label} is already placed.`,
        complete: state.placed.length === spec(unit).placements.length,
        state,
      };
    }
    const correct = spec(unit).placements.some(([l, z]) => l === label && z === zone);
    const placed = correct ? [...state.placed, label] : state.placed;
    return {
      accepted: true,
      correct,
      elementLabel: correct ? label : null,
      feedback: correct
        ? unit.elements.find((e) => e.label === label)?.feedback_text ?? `${label} placed.`
        : `Not quite — ${label} does not belong on ${zone}. Try another zone.`,
      complete: placed.length === spec(unit).placements.length,
      state: { placed },
    };
  },

  expectedActions(unit) {
    return spec(unit).placements.map(([label, zone]) => ({ label, zone }));
  },

  render(unit, host, onAction) {
    const s = spec(unit);
    let selected: string | null = null;
    const bank = document.createElement("div");
    bank.className = "label-bank";
    const zones = document.createElement("div");
    zones.className = "zone-row";
    for (const [label] of s.placements) {
      const chip = document.createElement("button");
      chip.textContent = label;
      chip.setAttribute("aria-label", `pick up ${label}`);
      chip.onclick = () => {
        selected = label;
      };
      bank.appendChild(chip);
    }
    for (const [, zone] of s.placements) {
      const target = document.createElement("button");
      target.textContent = `⬚ ${zone}`;
      target.className = "zone";
      target.setAttribute("aria-label", `drop zone ${zone}`);
      target.onclick = () => {
        if (selected) onAction({ label: selected, zone });
        selected = null;
      };
      zones.appendChild(target);
    }
    host.append(bank, zones);
  },
};
