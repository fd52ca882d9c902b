// Runtime guards for documents arriving over the wire. The player refuses
// anything without a passing final-gate certificate.

import type { GameDocument } from "./types.js";

export class DocumentRejected extends Error {}

function fail(message: string): never {
  throw new DocumentRejected(message);
}

export function assertGameDocument(raw: unknown): GameDocument {
  if (typeof raw !== "object" || raw === null) fail("document must be an object");
  const doc = raw as GameDocument;
  if (!doc.plan || !Array.isArray(doc.plan.scene_plans) || doc.plan.scene_plans.length === 0) {
    fail("document lacks scene plans");
  }
  if (!Array.isArray(doc.scene_contents) || doc.scene_contents.length === 0) {
    fail("document lacks scene contents");
  }
  if (!Array.isArray(doc.validation_certificate)) fail("document lacks a validation certificate");
  const finalGate = doc.validation_certificate.find((d) => d.gate === "QG4");
  if (!finalGate || (finalGate.verdict !== "pass" && finalGate.verdict !== "degraded_pass")) {
    fail("document is not QG4-certified; refusing to play it");
  }
  for (const unit of doc.scene_contents) {
    if (typeof unit.scene_index !== "number" || !Array.isArray(unit.elements)) {
      fail("malformed scene unit");
    }
    if (!unit.interaction_spec || typeof unit.interaction_spec.kind !== "string") {
      fail("scene unit lacks an interaction spec");
    }
  }
  return doc;
}

export function assertOutcome(record: unknown): void {
  const r = record as Record<string, unknown>;
  if (typeof r !== "object" || r === null) fail("outcome must be an object");
  if (typeof r.score !== "number" || r.score < 0) fail("outcome score must be >= 0");
  if (!Array.isArray(r.interaction_trace)) fail("outcome needs an interaction_trace array");
  const levels = ["remember", "understand", "apply", "analyze", "evaluate", "create"];
  if (!levels.includes(r.inferred_bloom as string)) fail("outcome inferred_bloom invalid");
  if (typeof r.duration_ms !== "number" || r.duration_ms < 0) fail("outcome duration invalid");
}
