// Player session: scene progression, scoring per score contract, action
// log, and outcome emission. Pure logic; rendering lives elsewhere.

import { assertGameDocument } from "./schema.js";
import { resolveMechanic } from "./registry.js";
import type {
  GameDocument,
  OutcomeRecord,
  PlayerAction,
  ScenePlan,
  SceneUnit,
} from "./types.js";

export interface SlotRuntime {
  scene: number;
  slot: number;
  mechanic: string;
  supported: boolean;
  complete: boolean;
  state: unknown;
  unit: SceneUnit;
}

export interface ActionOutcome {
  accepted: boolean;
  correct: boolean;
  feedback: string;
  scoreDelta: number;
  notice?: string;
}

export class PlayerSession {
  readonly doc: GameDocument;
  readonly slots: SlotRuntime[] = [];
  sceneIndex = 0;
  score = 0;
  actions: Record<string, unknown>[] = [];
  completed = false;
  private readonly startedAt: number;
  private readonly clock: () => number;

  constructor(doc: unknown, clock: () => number = () => Date.now()) {
    this.doc = assertGameDocument(doc);
    this.clock = clock;
    this.startedAt = clock();
    for (const unit of this.doc.scene_contents) {
      const plan = this.planFor(unit.scene_index);
      const mechanic = plan.mechanic_slots[unit.slot_index]?.mechanic ?? unit.interaction_spec.kind;
      const plugin = resolveMechanic(mechanic);
      this.slots.push({
        scene: unit.scene_index,
        slot: unit.slot_index,
        mechanic,
        supported: plugin !== null,
        complete: false,
        state: plugin ? plugin.init(unit) : null,
        unit,
      });
    }
  }

  planFor(sceneIndex: number): ScenePlan {
    const plan = this.doc.plan.scene_plans.find((p) => p.scene_index === sceneIndex);
    if (!plan) throw new Error(`no plan for scene ${sceneIndex}`);
    return plan;
  }

  slotRuntime(scene: number, slot: number): SlotRuntime | undefined {
    return this.slots.find((s) => s.scene === scene && s.slot === slot);
  }

  unsupportedMechanics(): string[] {
    return [...new Set(this.slots.filter((s) => !s.supported).map((s) => s.mechanic))].sort();
  }

  sceneComplete(sceneIndex: number): boolean {
    const members = this.slots.filter((s) => s.scene === sceneIndex);
    return members.length > 0 && members.every((s) => s.complete);
  }

  get maxScore(): number {
    return this.doc.plan.scene_plans.reduce((sum, p) => sum + p.score_contract.max_score, 0);
  }

  handleAction(action: PlayerAction): ActionOutcome {
    if (this.completed) {
      return { accepted: false, correct: false, feedback: "", scoreDelta: 0, notice: "session already complete" };
    }
    if (action.scene !== this.sceneIndex) {
      return {
        accepted: false,
        correct: false,
        feedback: "",
        scoreDelta: 0,
        notice: `scene ${action.scene} is not active; the advance trigger has not fired`,
      };
    }
    const runtime = this.slotRuntime(action.scene, action.slot);
    if (!runtime) {
      return { accepted: false, correct: false, feedback: "", scoreDelta: 0, notice: "no such slot" };
    }
    if (!runtime.supported) {
      return {
        accepted: false,
        correct: false,
        feedback: "",
        scoreDelta: 0,
        notice: `mechanic ${runtime.mechanic} is not supported by this player`,
      };
    }
    const plugin = resolveMechanic(runtime.mechanic)!;
    const result = plugin.evaluate(runtime.unit, runtime.state, action.data);
    runtime.state = result.state;
    const wasComplete = runtime.complete;
    runtime.complete = result.complete;

    let scoreDelta = 0;
    if (result.accepted) {
      this.actions.push({
        scene: action.scene,
        slot: action.slot,
        mechanic: action.mechanic,
        data: action.data,
        correct: result.correct,
      });
      if (result.correct && !wasComplete) {
        scoreDelta = this.planFor(action.scene).score_contract.per_element_points;
        this.score += scoreDelta;
      }
    }

    // advance_trigger: a scene opens once every slot of the current one is done
    while (this.sceneIndex < this.doc.plan.scene_plans.length && this.sceneComplete(this.sceneIndex)) {
      this.sceneIndex += 1;
    }
    if (this.sceneIndex >= this.doc.plan.scene_plans.length) {
      this.completed = true;
    }
    return {
      accepted: result.accepted,
      correct: result.correct,
      feedback: result.feedback,
      scoreDelta,
      notice: result.accepted ? undefined : result.feedback,
    };
  }

  emitOutcome(): OutcomeRecord {
    // inferred level is the blueprint's target level, passed through
    return {
      score: this.score,
      interaction_trace: this.actions,
      inferred_bloom: this.doc.plan.blueprint.bloom,
      duration_ms: Math.max(0, this.clock() - this.startedAt),
    };
  }
}

export function perfectPlay(session: PlayerSession): OutcomeRecord {
  for (const plan of session.doc.plan.scene_plans) {
    const members = session.slots
      .filter((s) => s.scene === plan.scene_index)
      .sort((a, b) => a.slot - b.slot);
    for (const runtime of members) {
      const plugin = resolveMechanic(runtime.mechanic);
      if (!plugin) throw new Error(`unsupported mechanic ${runtime.mechanic} in scripted play`);
      for (const data of plugin.expectedActions(runtime.unit)) {
        session.handleAction({
          scene: plan.scene_index,
          slot: runtime.slot,
          mechanic: runtime.mechanic,
          data,
        });
      }
    }
  }
  if (!session.completed) throw new Error("scripted play did not complete the session");
  return session.emitOutcome();
}
