"""The four Quality Gates: verdicts, failure codes, and determinism."""

from __future__ import annotations

import copy

import pytest

from gamesmith.defects import build_defect_corpus, detect_defect
from gamesmith.domain import (
    BloomLevel,
    FailureCode,
    GameBlueprint,
    GameDocument,
    GamePlan,
    GateId,
    MechanicType,
    SceneContent,
    SchemaViolation,
    Verdict,
)
from gamesmith.gates import (
    classify_failure,
    qg1_certify,
    qg2_validate_plan,
    qg3_validate_scene,
    qg4_final,
)
from gamesmith.gates.structural import fit_complexity_class

B = BloomLevel
M = MechanicType


@pytest.fixture()
def plant_payloads(plant_cell_document):
    return plant_cell_document.to_payload()


class TestQG1:
    def test_plant_cell_blueprint_passes(self, plant_cell_document):
        decision = qg1_certify(plant_cell_document.blueprint)
        assert decision.verdict is Verdict.PASS
        assert decision.failure_codes == ()

    def test_sequencing_without_sequence_data_fails(self, plant_payloads):
        blueprint_payload = copy.deepcopy(plant_payloads["plan"]["blueprint"])
        scene = blueprint_payload["concept"]["scenes"][0]
        scene["mechanics"][0]["mechanic_type"] = "sequencing"
        scene["needs_diagram"] = False
        blueprint_payload["contract_ids"] = ["sequencing"]
        blueprint_payload["bloom"] = "apply"
        blueprint = GameBlueprint.from_payload(blueprint_payload)
        decision = qg1_certify(
            blueprint, available_content=frozenset({"zone_labels", "diagram_geometry"})
        )
        assert decision.verdict is Verdict.FAIL
        codes = {f.code for f in decision.failure_codes}
        assert FailureCode.DATA_UNAVAILABLE in codes
        assert any("sequence" in f.detail for f in decision.failure_codes)

    def test_create_only_mechanic_at_remember_fails_bloom(self, plant_payloads):
        blueprint_payload = copy.deepcopy(plant_payloads["plan"]["blueprint"])
        scene = blueprint_payload["concept"]["scenes"][0]
        scene["mechanics"][0]["mechanic_type"] = "algorithm_builder"
        scene["needs_diagram"] = False
        blueprint_payload["contract_ids"] = ["algorithm_builder"]
        blueprint_payload["template"] = "interactive_algorithm"
        blueprint_payload["bloom"] = "remember"
        blueprint = GameBlueprint.from_payload(blueprint_payload)
        decision = qg1_certify(blueprint)
        assert decision.verdict is Verdict.FAIL
        assert FailureCode.BLOOM_MISMATCH in {f.code for f in decision.failure_codes}

    def test_distractor_overlap_fails(self, plant_payloads):
        blueprint_payload = copy.deepcopy(plant_payloads["plan"]["blueprint"])
        blueprint_payload["concept"]["distractor_labels"] = ["Nucleus"]
        blueprint = GameBlueprint.from_payload(blueprint_payload)
        decision = qg1_certify(blueprint)
        assert FailureCode.LABEL_OVERLAP in {f.code for f in decision.failure_codes}

    def test_determinism(self, plant_cell_document):
        first = qg1_certify(plant_cell_document.blueprint)
        second = qg1_certify(plant_cell_document.blueprint)
        assert first == second


class TestQG2:
    def test_exact_sum_passes(self, plant_cell_document):
        decision = qg2_validate_plan(plant_cell_document.plan)
        assert decision.verdict is Verdict.PASS

    def test_point_sum_mismatch_fails(self, plant_payloads):
        plan_payload = copy.deepcopy(plant_payloads["plan"])
        plan_payload["scene_plans"][0]["score_contract"]["max_score"] = 55.0
        # bypass schema to exercise the gate's own arithmetic
        plan = GamePlan.from_payload(plan_payload)
        decision = qg2_validate_plan(plan)
        assert FailureCode.SCORE_CONTRACT_VIOLATION in {f.code for f in decision.failure_codes}

    def test_randomized_point_vectors_against_arithmetic_oracle(self, plant_payloads):
        import random

        rng = random.Random(5)
        for _ in range(200):
            plan_payload = copy.deepcopy(plant_payloads["plan"])
            contract = plan_payload["scene_plans"][0]["score_contract"]
            slots = plan_payload["scene_plans"][0]["mechanic_slots"]
            points = rng.choice([2.5, 5.0, 10.0, 12.5])
            items = sum(s["item_count"] for s in slots)
            jitter = rng.choice([0.0, 0.0, 0.0, 1.0, -2.5])
            contract["per_element_points"] = points
            contract["max_score"] = points * items + jitter
            plan = GamePlan.from_payload(plan_payload)
            decision = qg2_validate_plan(plan)
            expected_pass = jitter == 0.0
            assert (decision.verdict is Verdict.PASS) == expected_pass


class TestQG3:
    def test_clean_scene_passes(self, plant_cell_document):
        plan_scene = plant_cell_document.plan.scene_plans[0]
        units = [u for u in plant_cell_document.scene_contents if u.scene_index == 0]
        decision = qg3_validate_scene(units, plan_scene, plant_cell_document.blueprint)
        assert decision.verdict is Verdict.PASS
        assert decision.scene_index == 0

    def test_op_count_below_threshold(self, plant_payloads):
        doc = copy.deepcopy(plant_payloads)
        unit = doc["scene_contents"][0]
        unit["interaction_spec"]["placements"] = unit["interaction_spec"]["placements"][:3]
        unit["elements"] = unit["elements"][:3]
        unit["op_count"] = 3
        document = GameDocument.from_payload(doc)
        plan_scene = document.plan.scene_plans[0]
        decision = qg3_validate_scene(
            list(document.scene_contents), plan_scene, document.blueprint
        )
        assert FailureCode.BLOOM_OP_COUNT_FAIL in {f.code for f in decision.failure_codes}

    def test_soundness_of_pass_recheck_predicates_independently(self, corpus_results):
        # any passing scene satisfies the three predicate families when
        # re-checked with plain loops
        from gamesmith.gates.lexicon import BloomLexicon

        lexicon = BloomLexicon()
        checked = 0
        for result in corpus_results.values():
            document = result.document
            assert document is not None
            for plan_scene in document.plan.scene_plans:
                units = [u for u in document.scene_contents if u.scene_index == plan_scene.scene_index]
                for unit in units:
                    slot = plan_scene.mechanic_slots[unit.slot_index]
                    from gamesmith.contracts import contract_for

                    threshold = contract_for(slot.mechanic).threshold_for(slot.item_count)
                    assert unit.op_count >= threshold
                    for element in unit.elements:
                        assert element.bloom_tag is plan_scene.scene_bloom
                        assert lexicon.entails(
                            element.feedback_text, element.label, plan_scene.scene_bloom
                        )
                    checked += 1
        assert checked >= 30


class TestQG4:
    def test_fully_valid_document_passes(self, plant_cell_document):
        decision = qg4_final(plant_cell_document)
        assert decision.verdict is Verdict.PASS
        assert plant_cell_document.is_degraded is False

    def test_missing_hints_degrade_but_do_not_fail(self, plant_payloads):
        doc = copy.deepcopy(plant_payloads)
        for unit in doc["scene_contents"]:
            unit["hint"] = ""
            unit["directions"] = ""
        document = GameDocument.from_payload(doc)
        decision = qg4_final(document)
        assert decision.verdict is Verdict.DEGRADED_PASS
        assert decision.failure_codes  # soft findings are reported

    def test_absent_qg3_certificate_fails(self, plant_payloads):
        doc = copy.deepcopy(plant_payloads)
        doc["validation_certificate"] = [
            d for d in doc["validation_certificate"] if d["gate"] != "QG3"
        ]
        document = GameDocument.from_payload(doc)
        decision = qg4_final(document)
        assert decision.verdict is Verdict.FAIL
        assert any("QG3" in f.detail for f in decision.failure_codes)

    def test_monotone_severity_adding_defect_never_passes(self, plant_payloads):
        # mutation property: corrupting a passing document flips the verdict
        mutations = [
            lambda d: d["scene_contents"][0].update(op_count=99),  # consistency break
            lambda d: d["assets"][0]["anchors"][0].__setitem__(1, 1.5),
            lambda d: d["validation_certificate"].clear(),
            lambda d: d["scene_contents"][0]["elements"][0].update(feedback_text=""),
        ]
        for mutate in mutations:
            doc = copy.deepcopy(plant_payloads)
            mutate(doc)
            document = GameDocument.from_payload(doc)
            assert qg4_final(document).verdict is Verdict.FAIL


class TestComplexityFit:
    def test_linear_table(self):
        assert fit_complexity_class(((8, 8), (16, 16), (32, 32))) == "O(n)"

    def test_logarithmic_table(self):
        assert fit_complexity_class(((8, 3), (16, 4), (32, 5), (64, 6))) == "O(log n)"

    def test_quadratic_table(self):
        assert fit_complexity_class(((8, 64), (16, 256), (32, 1024))) == "O(n^2)"

    def test_constant_and_exponential(self):
        assert fit_complexity_class(((8, 5), (16, 5), (32, 5))) == "O(1)"
        assert fit_complexity_class(((8, 256), (16, 65536), (32, 4294967296))) == "O(2^n)"

    def test_n_log_n_table(self):
        assert fit_complexity_class(((8, 24), (16, 64), (32, 160))) == "O(n log n)"


class TestClassifyFailure:
    def test_defect_corpus_reproduces_published_distribution(self):
        corpus = build_defect_corpus()
        assert len(corpus) == 20
        observed: dict[str, int] = {}
        for fixture in corpus:
            code, gate = detect_defect(fixture)
            assert code is fixture.expected_code, fixture.name
            assert gate is fixture.expected_gate, fixture.name
            observed[code.value] = observed.get(code.value, 0) + 1
        assert observed == {
            "BLOOM_OP_COUNT_FAIL": 4,
            "ANCHOR_OOB": 2,
            "ASSET_SCHEMA_MISMATCH": 1,
            "DEPTH_MISMATCH": 1,
            "CONSTRAINT_UNSAT": 2,
            "CLASS_MISMATCH": 1,
            "REGION_OVERLAP": 2,
            "SCORE_CONTRACT_VIOLATION": 2,
            "BLOOM_MISMATCH": 2,
            "FEEDBACK_ENTAILMENT_FAIL": 2,
            "BLOOM_NOT_MONOTONE": 1,
        }

    def test_unmappable_defect_becomes_unknown_never_dropped(self):
        mystery = SchemaViolation(path="weird.thing", expected="left-handed widget", found="7")
        codes = classify_failure([mystery])
        assert codes == [FailureCode.UNKNOWN_DEFECT]

    def test_every_code_has_exactly_one_default_gate(self):
        from gamesmith.gates import DEFAULT_GATE

        assert set(DEFAULT_GATE) == set(FailureCode)
        assert all(isinstance(g, GateId) for g in DEFAULT_GATE.values())
