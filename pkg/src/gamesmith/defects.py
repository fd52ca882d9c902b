"""Bundled defect corpus: twenty defective artifacts and their detection.

Each fixture takes a clean pipeline artifact and applies one targeted
mutation, reproducing the observed failure distribution: four relational-
link losses, two out-of-box coordinates, one missing axis label, one
shallow tree, two region overlaps, four state/schema defects, two
unsatisfiable rule sets, one mis-declared complexity class, and three
algorithm-side slips. detect_defect re-derives exactly one failure code
per fixture without consulting the expectation.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Optional

from gamesmith.contracts.registry import DEFAULT_REGISTRY
from gamesmith.domain.types import (
    FailureCode,
    GameDocument,
    GamePlan,
    GateId,
    SceneContent,
)
from gamesmith.domain.validation import validate_message
from gamesmith.gates.quality import DEFAULT_GATE, classify_failure, qg2_validate_plan, qg3_validate_scene
from gamesmith.pipeline.engine import run_pipeline
from gamesmith.providers.stub import StubProvider


@dataclass(frozen=True)
class DefectFixture:
    name: str
    mechanic: str
    kind: str  # "plan" | "scene"
    expected_code: FailureCode
    expected_gate: GateId
    plan_payload: dict[str, Any]
    scene_index: int = 0


@lru_cache(maxsize=None)
def _clean_document(question: str) -> dict[str, Any]:
    result = run_pipeline(question, provider=StubProvider(seed=42), seed=42)
    if not result.success:
        raise RuntimeError(f"fixture base run failed for {question!r}")
    assert result.document is not None
    return result.document.to_payload()


def _mutate(question: str, mutator: Callable[[dict[str, Any]], None]) -> dict[str, Any]:
    payload = copy.deepcopy(_clean_document(question))
    mutator(payload)
    return payload


def _scene_unit(doc: dict[str, Any], scene_index: int, slot_index: int = 0) -> dict[str, Any]:
    for unit in doc["scene_contents"]:
        if unit["scene_index"] == scene_index and unit.get("slot_index", 0) == slot_index:
            return unit
    raise KeyError((scene_index, slot_index))


def _strip_relations(doc: dict[str, Any], scene_index: int, slot_index: int) -> None:
    unit = _scene_unit(doc, scene_index, slot_index)
    for pair in unit["interaction_spec"]["pairs"]:
        pair[2] = ""
    unit["op_count"] = 0


def _fixture(
    name: str,
    mechanic: str,
    question: str,
    mutator: Callable[[dict[str, Any]], None],
    expected_code: FailureCode,
    expected_gate: GateId,
    kind: str = "scene",
    scene_index: int = 0,
) -> DefectFixture:
    return DefectFixture(
        name=name,
        mechanic=mechanic,
        kind=kind,
        expected_code=expected_code,
        expected_gate=expected_gate,
        plan_payload=_mutate(question, mutator),
        scene_index=scene_index,
    )


def build_defect_corpus() -> list[DefectFixture]:
    """The twenty bundled defect fixtures, in taxonomy order."""
    fixtures: list[DefectFixture] = []

    # Relational links lost from description pairs (4x, content gate).
    desc_sites = [
        ("desc_links_1", "Match each part of speech to what it does in a sentence.", 0, 0),
        ("desc_links_2", "Map each organelle and how the parts work together.", 0, 1),
        ("desc_links_3", "From recalling word classes to matching how they work.", 1, 0),
        ("desc_links_4", "Read the sources, then judge their weight.", 0, 0),
    ]
    for name, question, scene_index, slot_index in desc_sites:
        fixtures.append(
            _fixture(
                name,
                "description_matching",
                question,
                lambda doc, s=scene_index, sl=slot_index: _strip_relations(doc, s, sl),
                FailureCode.BLOOM_OP_COUNT_FAIL,
                GateId.QG3,
                scene_index=scene_index,
            )
        )

    # Path coordinates pushed outside the bounding box (2x).
    def skew_point(doc: dict[str, Any], scene_index: int) -> None:
        unit = _scene_unit(doc, scene_index, 0)
        unit["interaction_spec"]["points"][0][1] = 1.2

    fixtures.append(
        _fixture(
            "trace_oob_1", "trace_path", "Trace the path of blood through the heart.",
            lambda doc: skew_point(doc, 0), FailureCode.ANCHOR_OOB, GateId.QG3,
        )
    )
    fixtures.append(
        _fixture(
            "trace_oob_2", "trace_path", "Follow a droplet through the water cycle.",
            lambda doc: skew_point(doc, 0), FailureCode.ANCHOR_OOB, GateId.QG3,
        )
    )

    # Comparison plan missing its axis labels (1x, plan gate).
    def drop_axis(doc: dict[str, Any]) -> None:
        doc["plan"]["scene_plans"][0]["asset_brief"].pop("axis_labels", None)

    fixtures.append(
        _fixture(
            "compare_axis", "compare_contrast",
            "Judge which claims belong to primary or secondary sources.",
            drop_axis, FailureCode.ASSET_SCHEMA_MISMATCH, GateId.QG2, kind="plan",
        )
    )

    # Tree flattened below the contract's minimum depth (1x).
    def flatten_tree(doc: dict[str, Any]) -> None:
        unit = _scene_unit(doc, 0, 0)
        nodes = unit["interaction_spec"]["nodes"]
        root = next(label for label, parent in nodes if parent == "")
        for node in nodes:
            if node[0] != root:
                node[1] = root

    fixtures.append(
        _fixture(
            "tree_depth", "hierarchical", "Organize feudal society into its hierarchy.",
            flatten_tree, FailureCode.DEPTH_MISMATCH, GateId.QG3,
        )
    )

    # Overlapping click regions (2x).
    def overlap_regions(doc: dict[str, Any], scene_index: int, slot_index: int = 0) -> None:
        regions = _scene_unit(doc, scene_index, slot_index)["interaction_spec"]["regions"]
        regions[1][1] = regions[0][1] + 0.02
        regions[1][2] = regions[0][2] + 0.02

    fixtures.append(
        _fixture(
            "region_overlap_1", "click_to_identify", "Identify each solid shape on the display.",
            lambda doc: overlap_regions(doc, 0), FailureCode.REGION_OVERLAP, GateId.QG3,
        )
    )
    fixtures.append(
        _fixture(
            "region_overlap_2", "click_to_identify", "Find each organelle and match what it does.",
            lambda doc: overlap_regions(doc, 0), FailureCode.REGION_OVERLAP, GateId.QG3,
        )
    )

    # State/schema defects across the remaining diagram mechanics (4x).
    def break_score(doc: dict[str, Any]) -> None:
        doc["plan"]["scene_plans"][0]["score_contract"]["max_score"] += 5.0

    fixtures.append(
        _fixture(
            "memory_score", "memory_match", "Pair each fraction term with its meaning.",
            break_score, FailureCode.SCORE_CONTRACT_VIOLATION, GateId.QG2, kind="plan",
        )
    )

    def break_monotone(doc: dict[str, Any]) -> None:
        doc["plan"]["scene_plans"][1]["scene_bloom"] = "analyze"

    fixtures.append(
        _fixture(
            "sequence_order", "sequencing",
            "Name the stations, trace the journey, order the steps.",
            break_monotone, FailureCode.BLOOM_NOT_MONOTONE, GateId.QG2, kind="plan",
        )
    )

    def strip_cues(doc: dict[str, Any], scene_index: int) -> None:
        unit = _scene_unit(doc, scene_index, 0)
        for element in unit["elements"]:
            element["feedback_text"] = f"{element['label']} noted."

    fixtures.append(
        _fixture(
            "sorting_feedback", "sorting", "Classify these animals into their groups.",
            lambda doc: strip_cues(doc, 0), FailureCode.FEEDBACK_ENTAILMENT_FAIL, GateId.QG3,
        )
    )

    def retag_elements(doc: dict[str, Any], scene_index: int, level: str) -> None:
        unit = _scene_unit(doc, scene_index, 0)
        for element in unit["elements"]:
            element["bloom_tag"] = level

    fixtures.append(
        _fixture(
            "branch_state", "branching", "Steer the monarchy through the fiscal crisis.",
            lambda doc: retag_elements(doc, 0, "understand"),
            FailureCode.BLOOM_MISMATCH, GateId.QG3,
        )
    )

    # Algorithm-side defects (6x).
    fixtures.append(
        _fixture(
            "tracer_state", "state_tracer", "Trace the variables of binary search as it runs.",
            lambda doc: retag_elements(doc, 0, "remember"),
            FailureCode.BLOOM_MISMATCH, GateId.QG3,
        )
    )

    fixtures.append(
        _fixture(
            "bughunt_score", "bug_hunter", "Find the bugs in this list reversal.",
            break_score, FailureCode.SCORE_CONTRACT_VIOLATION, GateId.QG2, kind="plan",
        )
    )

    fixtures.append(
        _fixture(
            "builder_feedback", "algorithm_builder", "Assemble quicksort from its steps.",
            lambda doc: strip_cues(doc, 0), FailureCode.FEEDBACK_ENTAILMENT_FAIL, GateId.QG3,
        )
    )

    def make_unsat(doc: dict[str, Any], pin_var: str, pin_value: str, before_var: str) -> None:
        unit = _scene_unit(doc, 0, 0)
        rules = unit["interaction_spec"]["rules"]
        rules.append({"op": "eq", "var_a": pin_var, "var_b": "", "value": pin_value})
        rules.append({"op": "before", "var_a": before_var, "var_b": pin_var})

    fixtures.append(
        _fixture(
            "puzzle_unsat_1", "constraint_puzzle", "Design an exam week with no clashes.",
            lambda doc: make_unsat(doc, "history_exam", "Monday", "math_exam"),
            FailureCode.CONSTRAINT_UNSAT, GateId.QG3,
        )
    )
    fixtures.append(
        _fixture(
            "puzzle_unsat_2", "constraint_puzzle", "Solve the lab booking and codify the procedure.",
            lambda doc: make_unsat(doc, "robotics_team", "Slot1", "chem_team"),
            FailureCode.CONSTRAINT_UNSAT, GateId.QG3,
        )
    )

    def misdeclare_class(doc: dict[str, Any]) -> None:
        unit = _scene_unit(doc, 0, 0)
        spec = unit["interaction_spec"]
        spec["samples"] = [[8, 64], [16, 256], [32, 1024], [64, 4096]]

    fixtures.append(
        _fixture(
            "class_mismatch", "complexity_analyzer", "Determine how this loop's cost grows.",
            misdeclare_class, FailureCode.CLASS_MISMATCH, GateId.QG3,
        )
    )

    assert len(fixtures) == 20, len(fixtures)
    return fixtures


def detect_defect(fixture: DefectFixture) -> tuple[FailureCode, GateId]:
    """Re-derive the single failure code for a fixture by running the
    schema check and the appropriate gate; raises if detection is not
    exactly one code."""
    doc_payload = fixture.plan_payload
    plan_payload = doc_payload["plan"]

    if fixture.kind == "plan":
        violations = validate_message("game_plan.v1", plan_payload)
        if violations:
            codes = sorted(set(classify_failure(violations)), key=lambda c: c.value)
            if len(codes) != 1:
                raise ValueError(f"{fixture.name}: ambiguous schema classification {codes}")
            return codes[0], DEFAULT_GATE[codes[0]]
        plan = GamePlan.from_payload(plan_payload)
        decision = qg2_validate_plan(plan, registry=DEFAULT_REGISTRY)
        codes = sorted({f.code for f in decision.failure_codes}, key=lambda c: c.value)
        if len(codes) != 1:
            raise ValueError(f"{fixture.name}: expected one code, gate produced {codes}")
        return codes[0], decision.gate

    plan = GamePlan.from_payload(plan_payload)
    plan_scene = plan.scene_plans[fixture.scene_index]
    units = [
        SceneContent.from_payload(u)
        for u in doc_payload["scene_contents"]
        if u["scene_index"] == fixture.scene_index
    ]
    decision = qg3_validate_scene(units, plan_scene, plan.blueprint, registry=DEFAULT_REGISTRY)
    codes = sorted({f.code for f in decision.failure_codes}, key=lambda c: c.value)
    if len(codes) != 1:
        raise ValueError(f"{fixture.name}: expected one code, gate produced {codes}")
    return codes[0], decision.gate
