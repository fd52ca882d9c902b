// Pair matching: flip a term and a definition; a true pair stays matched.

import type { MechanicPlugin } from "../registry.js";
import type { MemoryMatchSpec, SceneUnit } from "../types.js";

interface MatchState {
  matched: string[];
}

function spec(unit: SceneUnit): MemoryMatchSpec {
  return unit.interaction_spec as unknown as MemoryMatchSpec;
}

export const memoryMatchPlugin: MechanicPlugin = {
  type: "memory_match",

  init(): MatchState {
    return { matched: [] };
  },

  evaluate(unit, rawState, data) {
    const state = rawState as MatchState;
    const first = String(data.first ?? "");
    const second = String(data.second ?? "");
    if (state.matched.includes(first)) {
      return {
        accepted: false,
        correct: false,
        elementLabel: first,
        feedback: `${first} is already matched.`,
        complete: state.matched.length === spec(unit).pairs.length,
        state,
      };
    }
    const correct = spec(unit).pairs.some(([term, match]) => term === first && match === second);
    const matched = correct ? [...state.matched, first] : state.matched;
    return {
      accepted: true,
      correct,
      elementLabel: correct ? first : null,
      feedback: correct
        ? unit.elements.find((e) => e.label === first)?.feedback_text ?? `${first} matched.`
        : `${first} does not pair with that card; flip again.`,
      complete: matched.length === spec(unit).pairs.length,
      state: { matched },
    };
  },

  expectedActions(unit) {
    return spec(unit).pairs.map(([term, match]) => ({ first: term, second: match }));
  },

  render(unit, host, onAction) {
    const grid = document.createElement("div");
    grid.className = "card-grid";
    let flipped: string | null = null;
    const faces: string[] = [];
    for (const [term, match] of spec(unit).pairs) {
      faces.push(term, match);
    }
    for (const face of faces.sort()) {
      const card = document.createElement("button");
      card.className = "card";
      card.textContent = face;
      card.setAttribute("aria-label", `card ${face}`);
      card.onclick = () => {
        if (flipped === null) {
          flipped = face;
          return;
        }
        const isTerm = spec(unit).pairs.some(([term]) => term === flipped);
        onAction(isTerm ? { first: flipped, second: face } : { first: face, second: flipped });
        flipped = null;
      };
      grid.appendChild(card);
    }
    host.appendChild(grid);
  },
};
