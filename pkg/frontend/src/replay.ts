// Replay a recorded interaction trace against the same document; the final
// score must reproduce exactly.

import { PlayerSession } from "./session.js";
import type { GameDocument } from "./types.js";

export function replayTrace(
  doc: GameDocument,
  trace: Record<string, unknown>[],
): { score: number; completed: boolean } {
  const session = new PlayerSession(doc, () => 0);
  for (const entry of trace) {
    session.handleAction({
      scene: Number(entry.scene),
      slot: Number(entry.slot),
      mechanic: String(entry.mechanic ?? ""),
      data: (entry.data ?? {}) as Record<string, unknown>,
    });
  }
  return { score: session.score, completed: session.completed };
}
