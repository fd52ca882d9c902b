// Region identification: prompts walk the region labels in order; a click
// (or labeled keyboard activation) must land on the prompted region.

import type { MechanicPlugin } from "../registry.js";
import type { ClickRegionSpec, SceneUnit } from "../types.js";

interface ClickState {
  found: string[];
}

function spec(unit: SceneUnit): ClickRegionSpec {
  return unit.interaction_spec as unknown as ClickRegionSpec;
}

function regionAt(unit: SceneUnit, x: number, y: number): string | null {
  for (const [label, rx, ry, rw, rh] of spec(unit).regions) {
    if (x >= rx && x <= rx + rw && y >= ry && y <= ry + rh) return label;
  }
  return null;
}

function currentTarget(unit: SceneUnit, state: ClickState): string | null {
  for (const [label] of spec(unit).regions) {
    if (!state.found.includes(label)) return label;
  }
  return null;
}

export const clickToIdentifyPlugin: MechanicPlugin = {
  type: "click_to_identify",

  init(): ClickState {
    return { found: [] };
  },

  evaluate(unit, rawState, data) {
    const state = rawState as ClickState;
    const target = currentTarget(unit, state);
    if (target === null) {
      return {
        accepted: false,
        correct: false,
        elementLabel: null,
        feedback: "Every region is already identified.",
        complete: true,
        state,
      };
    }
    const hit =
      typeof data.x === "number" && typeof data.y === "number"
        ? regionAt(unit, data.x as number, data.y as number)
        : String(data.label ?? "") || null;
    const correct = hit === target;
    const found = correct ? [...state.found, target] : state.found;
    return {
      accepted: true,
      correct,
      elementLabel: correct ? target : null,
      feedback: correct
        ? unit.elements.find((e) => e.label === target)?.feedback_text ?? `${target} found.`
        : `That is ${hit ?? "empty space"}; look for ${target}.`,
      complete: found.length === spec(unit).regions.length,
      state: { found },
    };
  },

  expectedActions(unit) {
    return spec(unit).regions.map(([, x, y, w, h]) => ({ x: x + w / 2, y: y + h / 2 }));
  },

  render(unit, host, onAction) {
    const surface = document.createElement("div");
    surface.className = "click-surface";
    surface.setAttribute("role", "group");
    for (const [label, x, y, w, h] of spec(unit).regions) {
      const region = document.createElement("button");
      region.className = "region";
      region.style.left = `${x * 100}%`;
      region.style.top = `${y * 100}%`;
      region.style.width = `${w * 100}%`;
      region.style.height = `${h * 100}%`;
      region.setAttribute("aria-label", `region ${label}`);
      region.onclick = () => onAction({ x: x + w / 2, y: y + h / 2 });
      surface.appendChild(region);
    }
    host.appendChild(surface);
  },
};
