// Browser wiring: pick a game from the library, play it scene by scene,
// post the outcome back to the ingest endpoint.

import { LibraryClient } from "./api.js";
import { registerBuiltinMechanics } from "./mechanics/index.js";
import { resolveMechanic } from "./registry.js";
import { PlayerSession } from "./session.js";
import { clusterView, parseTrace, totals } from "./trace.js";
import type { PlayerAction } from "./types.js";

registerBuiltinMechanics();

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  text?: string,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (text) node.textContent = text;
  if (className) node.className = className;
  return node;
}

export async function boot(root: HTMLElement, baseUrl = ""): Promise<void> {
  const client = new LibraryClient(baseUrl || window.location.origin.replace(/:\d+$/, ":8750"));
  root.replaceChildren(el("h1", "Game Library"));
  const list = el("ul", undefined, "game-list");
  root.appendChild(list);
  const games = await client.listGames();
  for (const meta of games) {
    const item = el("li");
    const button = el(
      "button",
      `${meta.game_id} — ${meta.bloom} — ${(meta.mechanics as string[]).join(", ")}`,
    );
    button.onclick = () => playGame(root, client, String(meta.game_id));
    item.appendChild(button);
    list.appendChild(item);
  }
}

async function playGame(root: HTMLElement, client: LibraryClient, gameId: string): Promise<void> {
  const doc = await client.fetchDocument(gameId);
  const session = new PlayerSession(doc);
  root.replaceChildren(el("h1", doc.plan.blueprint.concept.title));

  const unsupported = session.unsupportedMechanics();
  if (unsupported.length) {
    root.appendChild(
      el(
        "p",
        `This player does not support: ${unsupported.join(", ")}. Those scenes cannot be played here.`,
        "unsupported-notice",
      ),
    );
  }

  const status = el("p", "", "status");
  const feedbackBox = el("p", "", "feedback");
  const stage = el("div", undefined, "stage");
  root.append(status, feedbackBox, stage);

  const refresh = () => {
    status.textContent = session.completed
      ? `Finished! Score ${session.score} / ${session.maxScore}`
      : `Scene ${session.sceneIndex + 1} of ${doc.plan.scene_plans.length} — score ${session.score}`;
    stage.replaceChildren();
    if (session.completed) {
      const submit = el("button", "Submit outcome");
      submit.onclick = async () => {
        const sent = await client.postOutcome(gameId, session.emitOutcome());
        status.textContent = sent
          ? "Outcome recorded. Thanks for playing!"
          : "Outcome stored locally; it will upload when the library is reachable.";
      };
      stage.appendChild(submit);
      return;
    }
    for (const runtime of session.slots.filter((s) => s.scene === session.sceneIndex)) {
      const pane = el("section", undefined, "slot-pane");
      pane.appendChild(el("h2", runtime.mechanic.replace(/_/g, " ")));
      if (runtime.unit.directions) pane.appendChild(el("p", runtime.unit.directions, "directions"));
      if (runtime.unit.hint) pane.appendChild(el("p", runtime.unit.hint, "hint"));
      const plugin = resolveMechanic(runtime.mechanic);
      if (!plugin || !plugin.render) {
        pane.appendChild(el("p", `Unsupported mechanic: ${runtime.mechanic}`, "unsupported-notice"));
      } else {
        const host = el("div", undefined, "mechanic-host");
        plugin.render(runtime.unit, host, (data) => {
          const action: PlayerAction = {
            scene: runtime.scene,
            slot: runtime.slot,
            mechanic: runtime.mechanic,
            data,
          };
          const outcome = session.handleAction(action);
          feedbackBox.textContent = outcome.notice ?? outcome.feedback;
          feedbackBox.className = outcome.correct ? "feedback correct" : "feedback incorrect";
          refresh();
        });
        pane.appendChild(host);
      }
      stage.appendChild(pane);
    }
  };
  refresh();

  const traceButton = el("button", "View pipeline trace");
  traceButton.onclick = async () => {
    const text = await client.fetchTrace(gameId);
    const events = parseTrace(text);
    const summary = totals(events);
    const panel = el("pre", undefined, "trace-panel");
    const lines: string[] = [`tokens=${summary.tokens} cost=$${summary.costUsd.toFixed(4)}`];
    for (const [phase, members] of clusterView(events)) {
      lines.push(`${phase}: ${members.length} events`);
    }
    panel.textContent = lines.join("\n");
    root.appendChild(panel);
  };
  root.appendChild(traceButton);
}
