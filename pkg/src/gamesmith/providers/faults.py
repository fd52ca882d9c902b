"""Seeded fault injection for step outputs.

Fault classes mirror the observed defect root causes: dropped fields,
corrupted enums, out-of-range coordinates, reduced operation counts, and
cue-stripped feedback. Every class is detectable by a boundary schema check
or a gate, which the detection-completeness tests assert.
"""

from __future__ import annotations

import copy
import hashlib
import random
from dataclasses import dataclass
from typing import Any, Callable, Optional

FAULT_CLASSES = (
    "field_deletion",
    "enum_corruption",
    "coordinate_out_of_range",
    "op_count_reduction",
    "feedback_cue_strip",
)

# Script-only class used to exercise the degraded-delivery path.
HINT_STRIP = "hint_strip"


@dataclass(frozen=True)
class FaultRecord:
    step_name: str
    input_digest: str
    fault_class: str
    detail: str


def _delete_field(payload: dict[str, Any], step_name: str) -> Optional[str]:
    victims = {
        "input_analyzer": "bloom",
        "knowledge_retriever": "labels",
        "concept_designer": "estimated_duration_minutes",
        "game_planner": "scene_plans",
        "scene_content_generator": "op_count",
        "asset_worker": "payload",
    }
    key = victims.get(step_name)
    if step_name == "game_planner":
        plans = payload.get("scene_plans")
        if isinstance(plans, list) and plans and isinstance(plans[0], dict):
            contract = plans[0].get("score_contract")
            if isinstance(contract, dict) and "completion_condition" in contract:
                del contract["completion_condition"]
                return "deleted scene_plans[0].score_contract.completion_condition"
        return None
    if step_name == "scene_content_generator":
        units = payload.get("units")
        if isinstance(units, list) and units and isinstance(units[0], dict) and "op_count" in units[0]:
            del units[0]["op_count"]
            return "deleted units[0].op_count"
        return None
    if key and key in payload:
        del payload[key]
        return f"deleted {key}"
    return None


def _corrupt_enum(payload: dict[str, Any], step_name: str) -> Optional[str]:
    if step_name == "input_analyzer" and "difficulty" in payload:
        payload["difficulty"] = "impossible"
        return "difficulty set to invalid value"
    if step_name == "concept_designer" and "difficulty" in payload:
        payload["difficulty"] = "legendary"
        return "difficulty set to invalid value"
    if step_name == "game_planner":
        plans = payload.get("scene_plans")
        if isinstance(plans, list) and plans and isinstance(plans[0], dict):
            plans[0]["scene_bloom"] = "transcend"
            return "scene_bloom set to invalid value"
        return None
    if step_name == "scene_content_generator":
        units = payload.get("units")
        if isinstance(units, list) and units:
            elements = units[0].get("elements")
            if isinstance(elements, list) and elements:
                elements[0]["bloom_tag"] = "transcend"
                return "bloom_tag set to invalid value"
        return None
    if step_name == "asset_worker" and "kind" in payload:
        payload["kind"] = "hologram"
        return "asset kind set to invalid value"
    return None


def _skew_coordinates(payload: dict[str, Any], step_name: str) -> Optional[str]:
    if step_name == "asset_worker":
        anchors = payload.get("anchors")
        if isinstance(anchors, list) and anchors:
            anchors[0][1] = 1.3
            return "anchor x pushed outside the bounding box"
        return None
    if step_name == "scene_content_generator":
        units = payload.get("units")
        if not isinstance(units, list):
            return None
        for unit in units:
            spec = unit.get("interaction_spec", {})
            if spec.get("kind") == "trace_path" and spec.get("points"):
                spec["points"][0][1] = 1.2
                return "trace point pushed outside the bounding box"
            if spec.get("kind") == "click_to_identify" and spec.get("regions"):
                spec["regions"][0][1] = 0.97
                return "click region pushed outside the bounding box"
    return None


def _reduce_ops(payload: dict[str, Any], step_name: str) -> Optional[str]:
    if step_name != "scene_content_generator":
        return None
    units = payload.get("units")
    if not isinstance(units, list):
        return None
    for unit in units:
        spec = unit.get("interaction_spec", {})
        kind = spec.get("kind")
        rows_key = {
            "drag_drop": "placements",
            "click_to_identify": "regions",
            "trace_path": "points",
            "sequencing": "ordered_items",
            "sorting": "items",
            "memory_match": "pairs",
            "algorithm_builder": "ordered_steps",
            "state_tracer": "steps",
            "bug_hunter": "bugs",
        }.get(kind)
        if rows_key and isinstance(spec.get(rows_key), list) and len(spec[rows_key]) > 1:
            spec[rows_key] = spec[rows_key][:1]
            unit["elements"] = unit["elements"][:1]
            unit["op_count"] = 1
            return f"{kind} operations truncated to one"
        if kind == "description_matching" and isinstance(spec.get("pairs"), list):
            for pair in spec["pairs"]:
                pair[2] = ""
            unit["op_count"] = 0
            return "relational links stripped from description pairs"
    return None


def _strip_feedback_cues(payload: dict[str, Any], step_name: str) -> Optional[str]:
    if step_name != "scene_content_generator":
        return None
    units = payload.get("units")
    if not isinstance(units, list):
        return None
    changed = False
    for unit in units:
        for element in unit.get("elements", []):
            label = element.get("label", "item")
            element["feedback_text"] = f"{label} noted."
            changed = True
    return "feedback reduced to cue-free text" if changed else None


def _strip_hints(payload: dict[str, Any], step_name: str) -> Optional[str]:
    if step_name != "scene_content_generator":
        return None
    units = payload.get("units")
    if not isinstance(units, list):
        return None
    for unit in units:
        unit["hint"] = ""
        unit["directions"] = ""
    return "hint and direction text removed"


_APPLICATORS: dict[str, Callable[[dict[str, Any], str], Optional[str]]] = {
    "field_deletion": _delete_field,
    "enum_corruption": _corrupt_enum,
    "coordinate_out_of_range": _skew_coordinates,
    "op_count_reduction": _reduce_ops,
    "feedback_cue_strip": _strip_feedback_cues,
    HINT_STRIP: _strip_hints,
}


class FaultInjector:
    """Decides per (step, input digest) whether to corrupt an output."""

    def __init__(self, rate: float = 0.0, seed: int = 0):
        if not 0.0 <= rate <= 1.0:
            raise ValueError("fault rate must be within [0, 1]")
        self.rate = rate
        self.seed = seed
        self.records: list[FaultRecord] = []

    def _rng(self, step_name: str, digest: str) -> random.Random:
        material = f"{self.seed}|{step_name}|{digest}".encode("utf-8")
        return random.Random(int.from_bytes(hashlib.sha256(material).digest()[:8], "big"))

    def maybe_inject(
        self, step_name: str, digest: str, payload: dict[str, Any]
    ) -> dict[str, Any]:
        if self.rate <= 0.0:
            return payload
        rng = self._rng(step_name, digest)
        if rng.random() >= self.rate:
            return payload
        classes = list(FAULT_CLASSES)
        rng.shuffle(classes)
        mutated = copy.deepcopy(payload)
        for fault_class in classes:
            detail = _APPLICATORS[fault_class](mutated, step_name)
            if detail is not None:
                self.records.append(
                    FaultRecord(
                        step_name=step_name,
                        input_digest=digest,
                        fault_class=fault_class,
                        detail=detail,
                    )
                )
                return mutated
        return payload

    def apply_scripted(
        self, fault_class: str, step_name: str, digest: str, payload: dict[str, Any]
    ) -> dict[str, Any]:
        mutated = copy.deepcopy(payload)
        detail = _APPLICATORS[fault_class](mutated, step_name)
        if detail is None:
            return payload
        self.records.append(
            FaultRecord(
                step_name=step_name,
                input_digest=digest,
                fault_class=fault_class,
                detail=detail,
            )
        )
        return mutated
