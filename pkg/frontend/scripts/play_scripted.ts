// Perfect-play a game document from disk and print the OutcomeRecord.
//
//   node dist/scripts/play_scripted.js path/to/document.json

import { readFileSync } from "node:fs";

import { registerBuiltinMechanics } from "../src/mechanics/index.js";
import { PlayerSession, perfectPlay } from "../src/session.js";
import { replayTrace } from "../src/replay.js";
import type { GameDocument } from "../src/types.js";

function main(): void {
  const path = process.argv[2];
  if (!path) {
    console.error("usage: play_scripted.js <document.json>");
    process.exit(2);
  }
  registerBuiltinMechanics();
  const doc = JSON.parse(readFileSync(path, "utf-8")) as GameDocument;
  let tick = 0;
  const session = new PlayerSession(doc, () => (tick += 1000));
  const outcome = perfectPlay(session);

  const replayed = replayTrace(doc, outcome.interaction_trace);
  if (replayed.score !== outcome.score) {
    console.error(`replay mismatch: ${replayed.score} != ${outcome.score}`);
    process.exit(1);
  }
  process.stdout.write(JSON.stringify(outcome) + "\n");
}

main();
