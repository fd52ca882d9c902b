"""Typed artifacts exchanged between pipeline phases.

Every type is an immutable value: construction happens only from payloads
that already passed exhaustive validation (see gamesmith.domain.validation),
so instances can be shared freely across concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.mechanics import Family, MechanicType


class Difficulty(str, Enum):
    BEGINNER = "beginner"
    INTERMEDIATE = "intermediate"
    ADVANCED = "advanced"


# --------------------------------------------------------------------------
# Concept (phase-1 output)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SceneMechanic:
    mechanic_type: MechanicType
    learning_purpose: str
    expected_item_count: int
    advance_trigger: str

    def to_payload(self) -> dict[str, Any]:
        return {
            "mechanic_type": self.mechanic_type.value,
            "learning_purpose": self.learning_purpose,
            "expected_item_count": self.expected_item_count,
            "advance_trigger": self.advance_trigger,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "SceneMechanic":
        return cls(
            mechanic_type=MechanicType(data["mechanic_type"]),
            learning_purpose=data["learning_purpose"],
            expected_item_count=data["expected_item_count"],
            advance_trigger=data["advance_trigger"],
        )


@dataclass(frozen=True)
class ConceptScene:
    title: str
    learning_goal: str
    zone_labels: tuple[str, ...]
    needs_diagram: bool
    mechanics: tuple[SceneMechanic, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "learning_goal": self.learning_goal,
            "zone_labels": list(self.zone_labels),
            "needs_diagram": self.needs_diagram,
            "mechanics": [m.to_payload() for m in self.mechanics],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ConceptScene":
        return cls(
            title=data["title"],
            learning_goal=data["learning_goal"],
            zone_labels=tuple(data["zone_labels"]),
            needs_diagram=data["needs_diagram"],
            mechanics=tuple(SceneMechanic.from_payload(m) for m in data["mechanics"]),
        )


@dataclass(frozen=True)
class GameConcept:
    title: str
    subject: str
    difficulty: Difficulty
    narrative_theme: str
    all_zone_labels: tuple[str, ...]
    distractor_labels: tuple[str, ...]
    scenes: tuple[ConceptScene, ...]
    estimated_duration_minutes: int

    def to_payload(self) -> dict[str, Any]:
        return {
            "title": self.title,
            "subject": self.subject,
            "difficulty": self.difficulty.value,
            "narrative_theme": self.narrative_theme,
            "all_zone_labels": list(self.all_zone_labels),
            "distractor_labels": list(self.distractor_labels),
            "scenes": [s.to_payload() for s in self.scenes],
            "estimated_duration_minutes": self.estimated_duration_minutes,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "GameConcept":
        return cls(
            title=data["title"],
            subject=data["subject"],
            difficulty=Difficulty(data["difficulty"]),
            narrative_theme=data["narrative_theme"],
            all_zone_labels=tuple(data["all_zone_labels"]),
            distractor_labels=tuple(data["distractor_labels"]),
            scenes=tuple(ConceptScene.from_payload(s) for s in data["scenes"]),
            estimated_duration_minutes=data["estimated_duration_minutes"],
        )


@dataclass(frozen=True)
class GameBlueprint:
    learning_objective: str
    bloom: BloomLevel
    template: Family
    contract_ids: tuple[MechanicType, ...]
    concept: GameConcept
    provenance: str

    def to_payload(self) -> dict[str, Any]:
        return {
            "learning_objective": self.learning_objective,
            "bloom": self.bloom.value,
            "template": self.template.value,
            "contract_ids": [m.value for m in self.contract_ids],
            "concept": self.concept.to_payload(),
            "provenance": self.provenance,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "GameBlueprint":
        return cls(
            learning_objective=data["learning_objective"],
            bloom=BloomLevel(data["bloom"]),
            template=Family(data["template"]),
            contract_ids=tuple(MechanicType(m) for m in data["contract_ids"]),
            concept=GameConcept.from_payload(data["concept"]),
            provenance=data["provenance"],
        )


# --------------------------------------------------------------------------
# Plan (phase-2 output)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ScoreContract:
    max_score: float
    per_element_points: float
    completion_condition: str

    def to_payload(self) -> dict[str, Any]:
        return {
            "max_score": self.max_score,
            "per_element_points": self.per_element_points,
            "completion_condition": self.completion_condition,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ScoreContract":
        return cls(
            max_score=data["max_score"],
            per_element_points=data["per_element_points"],
            completion_condition=data["completion_condition"],
        )


@dataclass(frozen=True)
class MechanicSlot:
    mechanic: MechanicType
    item_count: int

    def to_payload(self) -> dict[str, Any]:
        return {"mechanic": self.mechanic.value, "item_count": self.item_count}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "MechanicSlot":
        return cls(mechanic=MechanicType(data["mechanic"]), item_count=data["item_count"])


@dataclass(frozen=True)
class ScenePlan:
    scene_index: int
    scene_bloom: BloomLevel
    mechanic_slots: tuple[MechanicSlot, ...]
    score_contract: ScoreContract
    # Asset requirements the scene's worker must satisfy; checked at QG2.
    asset_brief: dict[str, Any] = field(default_factory=dict)

    def to_payload(self) -> dict[str, Any]:
        return {
            "scene_index": self.scene_index,
            "scene_bloom": self.scene_bloom.value,
            "mechanic_slots": [s.to_payload() for s in self.mechanic_slots],
            "score_contract": self.score_contract.to_payload(),
            "asset_brief": dict(self.asset_brief),
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ScenePlan":
        return cls(
            scene_index=data["scene_index"],
            scene_bloom=BloomLevel(data["scene_bloom"]),
            mechanic_slots=tuple(MechanicSlot.from_payload(s) for s in data["mechanic_slots"]),
            score_contract=ScoreContract.from_payload(data["score_contract"]),
            asset_brief=dict(data.get("asset_brief", {})),
        )


@dataclass(frozen=True)
class GamePlan:
    blueprint: GameBlueprint
    scene_plans: tuple[ScenePlan, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "blueprint": self.blueprint.to_payload(),
            "scene_plans": [p.to_payload() for p in self.scene_plans],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "GamePlan":
        return cls(
            blueprint=GameBlueprint.from_payload(data["blueprint"]),
            scene_plans=tuple(ScenePlan.from_payload(p) for p in data["scene_plans"]),
        )

    @property
    def total_max_score(self) -> float:
        return sum(p.score_contract.max_score for p in self.scene_plans)


# --------------------------------------------------------------------------
# Interaction specs (one variant per mechanic)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZonePlacementSpec:
    """drag_drop: each (label, zone) placement is one scoreable operation."""

    kind = "drag_drop"
    placements: tuple[tuple[str, str], ...]

    def op_count(self) -> int:
        return len(self.placements)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "placements": [list(p) for p in self.placements]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ZonePlacementSpec":
        return cls(placements=tuple((p[0], p[1]) for p in data["placements"]))


@dataclass(frozen=True)
class ClickRegionSpec:
    """click_to_identify: rectangular regions in fractional coordinates."""

    kind = "click_to_identify"
    regions: tuple[tuple[str, float, float, float, float], ...]  # label, x, y, w, h

    def op_count(self) -> int:
        return len(self.regions)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "regions": [list(r) for r in self.regions]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ClickRegionSpec":
        return cls(regions=tuple((r[0], r[1], r[2], r[3], r[4]) for r in data["regions"]))


@dataclass(frozen=True)
class PathTraceSpec:
    """trace_path: ordered waypoints in fractional coordinates."""

    kind = "trace_path"
    points: tuple[tuple[str, float, float], ...]  # label, x, y

    def op_count(self) -> int:
        return len(self.points)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "points": [list(p) for p in self.points]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "PathTraceSpec":
        return cls(points=tuple((p[0], p[1], p[2]) for p in data["points"]))


@dataclass(frozen=True)
class RelationalPairSpec:
    """description_matching: only pairs carrying a relational link are scoreable."""

    kind = "description_matching"
    pairs: tuple[tuple[str, str, str], ...]  # left, right, relation ("" = unlinked)

    def op_count(self) -> int:
        return sum(1 for _, _, relation in self.pairs if relation)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "RelationalPairSpec":
        return cls(pairs=tuple((p[0], p[1], p[2]) for p in data["pairs"]))


@dataclass(frozen=True)
class OrderSpec:
    """sequencing: items shown shuffled, scored per correct position."""

    kind = "sequencing"
    ordered_items: tuple[str, ...]

    def op_count(self) -> int:
        return len(self.ordered_items)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "ordered_items": list(self.ordered_items)}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "OrderSpec":
        return cls(ordered_items=tuple(data["ordered_items"]))


@dataclass(frozen=True)
class BucketSortSpec:
    kind = "sorting"
    buckets: tuple[str, ...]
    items: tuple[tuple[str, str], ...]  # label, bucket

    def op_count(self) -> int:
        return len(self.items)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "buckets": list(self.buckets),
            "items": [list(i) for i in self.items],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "BucketSortSpec":
        return cls(
            buckets=tuple(data["buckets"]),
            items=tuple((i[0], i[1]) for i in data["items"]),
        )


@dataclass(frozen=True)
class PairMatchSpec:
    kind = "memory_match"
    pairs: tuple[tuple[str, str], ...]

    def op_count(self) -> int:
        return len(self.pairs)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "pairs": [list(p) for p in self.pairs]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "PairMatchSpec":
        return cls(pairs=tuple((p[0], p[1]) for p in data["pairs"]))


@dataclass(frozen=True)
class BranchChoice:
    label: str
    next_node: str
    correct: bool

    def to_payload(self) -> dict[str, Any]:
        return {"label": self.label, "next_node": self.next_node, "correct": self.correct}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "BranchChoice":
        return cls(label=data["label"], next_node=data["next_node"], correct=data["correct"])


@dataclass(frozen=True)
class BranchNode:
    node_id: str
    prompt: str
    choices: tuple[BranchChoice, ...]

    def to_payload(self) -> dict[str, Any]:
        return {
            "node_id": self.node_id,
            "prompt": self.prompt,
            "choices": [c.to_payload() for c in self.choices],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "BranchNode":
        return cls(
            node_id=data["node_id"],
            prompt=data["prompt"],
            choices=tuple(BranchChoice.from_payload(c) for c in data["choices"]),
        )


@dataclass(frozen=True)
class BranchSpec:
    kind = "branching"
    nodes: tuple[BranchNode, ...]

    def op_count(self) -> int:
        return sum(1 for n in self.nodes if n.choices)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "nodes": [n.to_payload() for n in self.nodes]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "BranchSpec":
        return cls(nodes=tuple(BranchNode.from_payload(n) for n in data["nodes"]))


@dataclass(frozen=True)
class CompareMatrixSpec:
    kind = "compare_contrast"
    axis_labels: tuple[str, str]
    statements: tuple[tuple[str, str], ...]  # statement, side ("left"/"right"/"both")

    def op_count(self) -> int:
        return len(self.statements)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "axis_labels": list(self.axis_labels),
            "statements": [list(s) for s in self.statements],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "CompareMatrixSpec":
        axes = data["axis_labels"]
        return cls(
            axis_labels=(axes[0], axes[1]),
            statements=tuple((s[0], s[1]) for s in data["statements"]),
        )


@dataclass(frozen=True)
class TreeSpec:
    kind = "hierarchical"
    nodes: tuple[tuple[str, str], ...]  # label, parent label ("" = root)

    def op_count(self) -> int:
        return len(self.nodes)

    def depth(self) -> int:
        parents = {label: parent for label, parent in self.nodes}

        def node_depth(label: str) -> int:
            depth = 0
            seen = set()
            while parents.get(label) and label not in seen:
                seen.add(label)
                label = parents[label]
                depth += 1
            return depth

        return max((node_depth(label) for label, _ in self.nodes), default=0)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "nodes": [list(n) for n in self.nodes]}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "TreeSpec":
        return cls(nodes=tuple((n[0], n[1]) for n in data["nodes"]))


@dataclass(frozen=True)
class StateTraceSpec:
    kind = "state_tracer"
    code_lines: tuple[str, ...]
    steps: tuple[tuple[int, str, str], ...]  # line number, variable, value

    def op_count(self) -> int:
        return len(self.steps)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "code_lines": list(self.code_lines),
            "steps": [list(s) for s in self.steps],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "StateTraceSpec":
        return cls(
            code_lines=tuple(data["code_lines"]),
            steps=tuple((s[0], s[1], s[2]) for s in data["steps"]),
        )


@dataclass(frozen=True)
class BugHuntSpec:
    kind = "bug_hunter"
    code_lines: tuple[str, ...]
    bugs: tuple[tuple[int, str, str], ...]  # line number, defect kind, fix

    def op_count(self) -> int:
        return len(self.bugs)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "code_lines": list(self.code_lines),
            "bugs": [list(b) for b in self.bugs],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "BugHuntSpec":
        return cls(
            code_lines=tuple(data["code_lines"]),
            bugs=tuple((b[0], b[1], b[2]) for b in data["bugs"]),
        )


@dataclass(frozen=True)
class StepOrderSpec:
    kind = "algorithm_builder"
    ordered_steps: tuple[str, ...]

    def op_count(self) -> int:
        return len(self.ordered_steps)

    def to_payload(self) -> dict[str, Any]:
        return {"kind": self.kind, "ordered_steps": list(self.ordered_steps)}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "StepOrderSpec":
        return cls(ordered_steps=tuple(data["ordered_steps"]))


@dataclass(frozen=True)
class ComplexityTableSpec:
    kind = "complexity_analyzer"
    declared_class: str  # one of the labels in gamesmith.gates.structural
    samples: tuple[tuple[int, int], ...]  # input size, measured steps

    def op_count(self) -> int:
        return len(self.samples)

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "declared_class": self.declared_class,
            "samples": [list(s) for s in self.samples],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ComplexityTableSpec":
        return cls(
            declared_class=data["declared_class"],
            samples=tuple((s[0], s[1]) for s in data["samples"]),
        )


@dataclass(frozen=True)
class PuzzleRule:
    op: str  # eq | ne | same | diff | before
    var_a: str
    var_b: str = ""
    value: str = ""

    def to_payload(self) -> dict[str, Any]:
        return {"op": self.op, "var_a": self.var_a, "var_b": self.var_b, "value": self.value}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "PuzzleRule":
        return cls(
            op=data["op"],
            var_a=data["var_a"],
            var_b=data.get("var_b", ""),
            value=data.get("value", ""),
        )


@dataclass(frozen=True)
class PuzzleSpec:
    kind = "constraint_puzzle"
    variables: tuple[tuple[str, tuple[str, ...]], ...]  # name, domain values
    rules: tuple[PuzzleRule, ...]

    def op_count(self) -> int:
        return len(self.variables)

    def domain_size(self) -> int:
        size = 1
        for _, domain in self.variables:
            size *= max(len(domain), 1)
        return size

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "variables": [[name, list(domain)] for name, domain in self.variables],
            "rules": [r.to_payload() for r in self.rules],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "PuzzleSpec":
        return cls(
            variables=tuple((v[0], tuple(v[1])) for v in data["variables"]),
            rules=tuple(PuzzleRule.from_payload(r) for r in data["rules"]),
        )


InteractionSpec = Union[
    ZonePlacementSpec,
    ClickRegionSpec,
    PathTraceSpec,
    RelationalPairSpec,
    OrderSpec,
    BucketSortSpec,
    PairMatchSpec,
    BranchSpec,
    CompareMatrixSpec,
    TreeSpec,
    StateTraceSpec,
    BugHuntSpec,
    StepOrderSpec,
    ComplexityTableSpec,
    PuzzleSpec,
]

INTERACTION_SPEC_KINDS: dict[str, type] = {
    spec.kind: spec
    for spec in (
        ZonePlacementSpec,
        ClickRegionSpec,
        PathTraceSpec,
        RelationalPairSpec,
        OrderSpec,
        BucketSortSpec,
        PairMatchSpec,
        BranchSpec,
        CompareMatrixSpec,
        TreeSpec,
        StateTraceSpec,
        BugHuntSpec,
        StepOrderSpec,
        ComplexityTableSpec,
        PuzzleSpec,
    )
}


def interaction_spec_from_payload(data: dict[str, Any]) -> InteractionSpec:
    spec_cls = INTERACTION_SPEC_KINDS[data["kind"]]
    return spec_cls.from_payload(data)


# --------------------------------------------------------------------------
# Scene content, assets, document (phases 3-5)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ContentElement:
    label: str
    description: str
    feedback_text: str
    bloom_tag: BloomLevel

    def to_payload(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "description": self.description,
            "feedback_text": self.feedback_text,
            "bloom_tag": self.bloom_tag.value,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "ContentElement":
        return cls(
            label=data["label"],
            description=data["description"],
            feedback_text=data["feedback_text"],
            bloom_tag=BloomLevel(data["bloom_tag"]),
        )


@dataclass(frozen=True)
class SceneContent:
    """Content unit for one mechanic slot of one scene.

    Multi-mechanic scenes produce one unit per slot, ordered by
    (scene_index, slot_index); each unit carries its own interaction spec
    and scoreable-operation count.
    """

    scene_index: int
    elements: tuple[ContentElement, ...]
    interaction_spec: InteractionSpec
    op_count: int
    slot_index: int = 0
    hint: str = ""
    directions: str = ""

    def to_payload(self) -> dict[str, Any]:
        return {
            "scene_index": self.scene_index,
            "slot_index": self.slot_index,
            "elements": [e.to_payload() for e in self.elements],
            "interaction_spec": self.interaction_spec.to_payload(),
            "op_count": self.op_count,
            "hint": self.hint,
            "directions": self.directions,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "SceneContent":
        return cls(
            scene_index=data["scene_index"],
            slot_index=data.get("slot_index", 0),
            elements=tuple(ContentElement.from_payload(e) for e in data["elements"]),
            interaction_spec=interaction_spec_from_payload(data["interaction_spec"]),
            op_count=data["op_count"],
            hint=data.get("hint", ""),
            directions=data.get("directions", ""),
        )


class AssetKind(str, Enum):
    SVG_DIAGRAM = "svg_diagram"
    TEXT_VISUAL = "text_visual"


@dataclass(frozen=True)
class AssetSpec:
    kind: AssetKind
    payload: str
    anchors: tuple[tuple[str, float, float], ...]  # label, x, y in [0,1]
    bounding_box: tuple[float, float]
    scene_index: int = 0

    def to_payload(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "payload": self.payload,
            "anchors": [list(a) for a in self.anchors],
            "bounding_box": list(self.bounding_box),
            "scene_index": self.scene_index,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "AssetSpec":
        box = data["bounding_box"]
        return cls(
            kind=AssetKind(data["kind"]),
            payload=data["payload"],
            anchors=tuple((a[0], a[1], a[2]) for a in data["anchors"]),
            bounding_box=(box[0], box[1]),
            scene_index=data.get("scene_index", 0),
        )


# --------------------------------------------------------------------------
# Gate verdicts (embedded in documents and traces)
# --------------------------------------------------------------------------


class GateId(str, Enum):
    QG1 = "QG1"
    QG2 = "QG2"
    QG3 = "QG3"
    QG4 = "QG4"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    DEGRADED_PASS = "degraded_pass"


class FailureCode(str, Enum):
    BLOOM_OP_COUNT_FAIL = "BLOOM_OP_COUNT_FAIL"
    ANCHOR_OOB = "ANCHOR_OOB"
    ASSET_SCHEMA_MISMATCH = "ASSET_SCHEMA_MISMATCH"
    DEPTH_MISMATCH = "DEPTH_MISMATCH"
    CONSTRAINT_UNSAT = "CONSTRAINT_UNSAT"
    CLASS_MISMATCH = "CLASS_MISMATCH"
    BLOOM_MISMATCH = "BLOOM_MISMATCH"
    FEEDBACK_ENTAILMENT_FAIL = "FEEDBACK_ENTAILMENT_FAIL"
    SCENE_COUNT_EXCEEDED = "SCENE_COUNT_EXCEEDED"
    BLOOM_NOT_MONOTONE = "BLOOM_NOT_MONOTONE"
    REGION_OVERLAP = "REGION_OVERLAP"
    SCORE_CONTRACT_VIOLATION = "SCORE_CONTRACT_VIOLATION"
    MECHANIC_COUNT_EXCEEDED = "MECHANIC_COUNT_EXCEEDED"
    MECHANIC_INCOMPAT = "MECHANIC_INCOMPAT"
    DATA_UNAVAILABLE = "DATA_UNAVAILABLE"
    LABEL_OVERLAP = "LABEL_OVERLAP"
    SCHEMA_INCOMPLETE = "SCHEMA_INCOMPLETE"
    UNKNOWN_DEFECT = "UNKNOWN_DEFECT"


@dataclass(frozen=True)
class Failure:
    code: FailureCode
    gate: GateId
    detail: str

    def to_payload(self) -> dict[str, Any]:
        return {"code": self.code.value, "gate": self.gate.value, "detail": self.detail}

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "Failure":
        return cls(
            code=FailureCode(data["code"]),
            gate=GateId(data["gate"]),
            detail=data["detail"],
        )


@dataclass(frozen=True)
class GateDecision:
    gate: GateId
    verdict: Verdict
    failure_codes: tuple[Failure, ...]
    retry_remaining: int
    per_element_report: tuple[str, ...] = ()
    scene_index: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.verdict in (Verdict.PASS, Verdict.DEGRADED_PASS)

    def to_payload(self) -> dict[str, Any]:
        return {
            "gate": self.gate.value,
            "verdict": self.verdict.value,
            "failure_codes": [f.to_payload() for f in self.failure_codes],
            "retry_remaining": self.retry_remaining,
            "per_element_report": list(self.per_element_report),
            "scene_index": self.scene_index,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "GateDecision":
        return cls(
            gate=GateId(data["gate"]),
            verdict=Verdict(data["verdict"]),
            failure_codes=tuple(Failure.from_payload(f) for f in data["failure_codes"]),
            retry_remaining=data["retry_remaining"],
            per_element_report=tuple(data.get("per_element_report", [])),
            scene_index=data.get("scene_index"),
        )


@dataclass(frozen=True)
class GameDocument:
    plan: GamePlan
    scene_contents: tuple[SceneContent, ...]
    assets: tuple[AssetSpec, ...]
    is_degraded: bool
    validation_certificate: tuple[GateDecision, ...]

    @property
    def blueprint(self) -> GameBlueprint:
        return self.plan.blueprint

    def to_payload(self) -> dict[str, Any]:
        return {
            "plan": self.plan.to_payload(),
            "scene_contents": [s.to_payload() for s in self.scene_contents],
            "assets": [a.to_payload() for a in self.assets],
            "is_degraded": self.is_degraded,
            "validation_certificate": [d.to_payload() for d in self.validation_certificate],
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "GameDocument":
        return cls(
            plan=GamePlan.from_payload(data["plan"]),
            scene_contents=tuple(SceneContent.from_payload(s) for s in data["scene_contents"]),
            assets=tuple(AssetSpec.from_payload(a) for a in data["assets"]),
            is_degraded=data["is_degraded"],
            validation_certificate=tuple(
                GateDecision.from_payload(d) for d in data["validation_certificate"]
            ),
        )


@dataclass(frozen=True)
class SchemaViolation:
    path: str
    expected: str
    found: str

    def to_payload(self) -> dict[str, Any]:
        return {"path": self.path, "expected": self.expected, "found": self.found}

    def __str__(self) -> str:
        return f"{self.path}: expected {self.expected}, found {self.found}"
