// Ordering: items arrive shuffled; the next slot only accepts the next item.

import type { MechanicPlugin } from "../registry.js";
import type { SceneUnit, SequencingSpec } from "../types.js";

interface SequenceState {
  placedCount: number;
}

function spec(unit: SceneUnit): SequencingSpec {
  return unit.interaction_spec as unknown as SequencingSpec;
}

export const sequencingPlugin: MechanicPlugin = {
  type: "sequencing",

  init(): SequenceState {
    return { placedCount: 0 };
  },

  evaluate(unit, rawState, data) {
    const state = rawState as SequenceState;
    const items = spec(unit).ordered_items;
    if (state.placedCount >= items.length) {
      return {
        accepted: false,
        correct: false,
        elementLabel: null,
        feedback: "The sequence is already complete.",
        complete: true,
        state,
      };
    }
    const item = String(data.item ?? "");
    const correct = items[state.placedCount] === item;
    const placedCount = correct ? state.placedCount + 1 : state.placedCount;
    return {
      accepted: true,
      correct,
      elementLabel: correct ? item : null,
      feedback: correct
        ? unit.elements.find((e) => e.label === item)?.feedback_text ?? `${item} placed.`
        : `${item} is not next; think about what happens first.`,
      complete: placedCount === items.length,
      state: { placedCount },
    };
  },

  expectedActions(unit) {
    return spec(unit).ordered_items.map((item) => ({ item }));
  },

  render(unit, host, onAction) {
    // content-only mechanic: no diagram pane, just an ordered slot list
    const list = document.createElement("ol");
    list.className = "sequence-slots";
    const bank = document.createElement("div");
    bank.className = "sequence-bank";
    const shuffled = [...spec(unit).ordered_items].sort();
    for (const item of shuffled) {
      const chip = document.createElement("button");
      chip.textContent = item;
      chip.setAttribute("aria-label", `place ${item} next`);
      chip.onclick = () => onAction({ item });
      bank.appendChild(chip);
    }
    host.append(bank, list);
  },
};
