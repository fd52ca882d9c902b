// Mechanic plugin registry. Adding a mechanic means registering one plugin;
// nothing outside the registry entry changes.

import type { SceneUnit } from "./types.js";

export interface EvalResult {
  accepted: boolean; // false = action ignored (already done / not live)
  correct: boolean;
  elementLabel: string | null;
  feedback: string;
  complete: boolean;
  state: unknown;
}

export interface MechanicPlugin {
  readonly type: string;
  init(unit: SceneUnit): unknown;
  evaluate(unit: SceneUnit, state: unknown, data: Record<string, unknown>): EvalResult;
  /** Action data for a perfect run, in play order. */
  expectedActions(unit: SceneUnit): Record<string, unknown>[];
  /** Browser rendering hook; logic tests never touch it. */
  render?(unit: SceneUnit, host: HTMLElement, onAction: (data: Record<string, unknown>) => void): void;
}

const plugins = new Map<string, MechanicPlugin>();

export function registerMechanic(plugin: MechanicPlugin): void {
  plugins.set(plugin.type, plugin);
}

export function resolveMechanic(type: string): MechanicPlugin | null {
  return plugins.get(type) ?? null;
}

export function supportedMechanics(): string[] {
  return [...plugins.keys()].sort();
}
