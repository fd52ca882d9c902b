// Canonical document shapes consumed by the player. Field names mirror the
// engine's wire format exactly; only the mechanics the player implements
// carry fully-typed interaction specs.

export type BloomLevel =
  | "remember"
  | "understand"
  | "apply"
  | "analyze"
  | "evaluate"
  | "create";

export interface ScoreContract {
  max_score: number;
  per_element_points: number;
  completion_condition: string;
}

export interface MechanicSlot {
  mechanic: string;
  item_count: number;
}

export interface ScenePlan {
  scene_index: number;
  scene_bloom: BloomLevel;
  mechanic_slots: MechanicSlot[];
  score_contract: ScoreContract;
  asset_brief: Record<string, unknown>;
}

export interface ContentElement {
  label: string;
  description: string;
  feedback_text: string;
  bloom_tag: BloomLevel;
}

export interface DragDropSpec {
  kind: "drag_drop";
  placements: [string, string][];
}

export interface ClickRegionSpec {
  kind: "click_to_identify";
  regions: [string, number, number, number, number][];
}

export interface SequencingSpec {
  kind: "sequencing";
  ordered_items: string[];
}

export interface MemoryMatchSpec {
  kind: "memory_match";
  pairs: [string, string][];
}

export type KnownInteractionSpec =
  | DragDropSpec
  | ClickRegionSpec
  | SequencingSpec
  | MemoryMatchSpec;

export interface SceneUnit {
  scene_index: number;
  slot_index: number;
  elements: ContentElement[];
  interaction_spec: { kind: string } & Record<string, unknown>;
  op_count: number;
  hint: string;
  directions: string;
}

export interface AssetSpec {
  kind: "svg_diagram" | "text_visual";
  payload: string;
  anchors: [string, number, number][];
  bounding_box: [number, number];
  scene_index: number;
}

export interface GateDecision {
  gate: "QG1" | "QG2" | "QG3" | "QG4";
  verdict: "pass" | "fail" | "degraded_pass";
  failure_codes: { code: string; gate: string; detail: string }[];
  retry_remaining: number;
  scene_index?: number | null;
}

export interface GameBlueprint {
  learning_objective: string;
  bloom: BloomLevel;
  template: string;
  contract_ids: string[];
  concept: {
    title: string;
    subject: string;
    difficulty: string;
    narrative_theme: string;
    all_zone_labels: string[];
    distractor_labels: string[];
    scenes: unknown[];
    estimated_duration_minutes: number;
  };
  provenance: string;
}

export interface GamePlan {
  blueprint: GameBlueprint;
  scene_plans: ScenePlan[];
}

export interface GameDocument {
  plan: GamePlan;
  scene_contents: SceneUnit[];
  assets: AssetSpec[];
  is_degraded: boolean;
  validation_certificate: GateDecision[];
}

// One player action; `data` is mechanic-specific and is the only part a
// replay needs beyond the addressing fields.
export interface PlayerAction {
  scene: number;
  slot: number;
  mechanic: string;
  data: Record<string, unknown>;
}

export interface OutcomeRecord {
  score: number;
  interaction_trace: Record<string, unknown>[];
  inferred_bloom: BloomLevel;
  duration_ms: number;
}
