"""Orchestrator: phase order, boundaries, fan-out, retries, determinism."""

from __future__ import annotations

import random
import time

import pytest

from gamesmith.domain import Verdict
from gamesmith.domain.canonical import canonical_json
from gamesmith.pipeline import (
    BoundaryOrderError,
    PhaseId,
    PipelineEngine,
    RetryPolicy,
    TaggedMessage,
    enforce_boundary,
    fan_out,
    retry_with_feedback,
    run_pipeline,
)
from gamesmith.providers import StubProvider
from gamesmith.providers.scenarios import CORPUS_SCENARIOS
from gamesmith.tracing.events import EventKind, PHASE_ORDER


PLANT = "Label the parts of a plant cell."


class TestRunPipeline:
    def test_plant_cell_success_drag_drop_diagram(self, corpus_results):
        result = corpus_results["plant_cell_drag"]
        assert result.success
        document = result.document
        assert [m.value for m in document.blueprint.contract_ids] == ["drag_drop"]
        assert document.blueprint.template.value == "interactive_diagram"
        assert document.blueprint.bloom.value == "analyze"
        zones = set(document.blueprint.concept.all_zone_labels)
        assert zones == {"Chloroplast", "Mitochondria", "Cell Wall", "Vacuole", "Nucleus", "Ribosome"}

    def test_empty_question_is_a_precondition_error(self):
        with pytest.raises(ValueError):
            run_pipeline("   ", provider=StubProvider(seed=42))

    def test_corpus_all_thirty_succeed(self, corpus_results):
        assert len(corpus_results) == 30
        assert all(result.success for result in corpus_results.values())

    def test_phase_and_gate_order_on_every_trace(self, corpus_results):
        for result in corpus_results.values():
            phases = [e.phase for e in result.trace]
            indices = [PHASE_ORDER.index(p) for p in phases]
            assert indices == sorted(indices), "phases must execute strictly in order"
            gates = [e.gate.gate.value for e in result.trace if e.kind is EventKind.GATE_DECISION]
            assert gates[0] == "QG1" and gates[1] == "QG2" and gates[-1] == "QG4"
            assert all(g == "QG3" for g in gates[2:-1])
            n_scenes = len(result.document.plan.scene_plans)
            assert gates.count("QG3") == n_scenes

    def test_bounded_work_ledger(self, corpus_results):
        policy = RetryPolicy()
        for result in corpus_results.values():
            n_scenes = len(result.document.plan.scene_plans)
            base = 2 + 1 + 1 + n_scenes + n_scenes
            ceiling = (
                base
                + 2 * policy.boundary
                + policy.qg1
                + policy.qg2
                + n_scenes * policy.qg3_per_scene
                + n_scenes * policy.boundary
            )
            assert result.totals["generative_steps"] <= ceiling
            # clean runs take exactly the base number of steps
            assert result.totals["generative_steps"] == base

    def test_accounting_conservation(self, corpus_results):
        for result in corpus_results.values():
            step_tokens = sum(
                e.usage.total for e in result.trace if e.kind is EventKind.STEP_END
            )
            assert result.totals["tokens"] == step_tokens
            step_cost = sum(e.cost_usd for e in result.trace)
            assert result.totals["cost_usd"] == pytest.approx(step_cost, abs=1e-12)


class TestDeterminism:
    def test_byte_identical_results_across_runs(self):
        first = run_pipeline(PLANT, provider=StubProvider(seed=42), seed=42)
        second = run_pipeline(PLANT, provider=StubProvider(seed=42), seed=42)
        assert canonical_json(first.to_payload()) == canonical_json(second.to_payload())

    def test_different_seed_changes_provenance_only_not_validity(self):
        result = run_pipeline(PLANT, provider=StubProvider(seed=7), seed=7)
        assert result.success

    def test_virtual_clock_wall_time_matches_latency_fixture(self, corpus_results):
        result = corpus_results["plant_cell_drag"]
        assert result.totals["wall_time_ms"] == 27000


class TestPhase0:
    def test_plant_cell_context(self):
        engine = PipelineEngine(StubProvider(seed=42))
        engine._recorder = __import__("gamesmith.tracing.recorder", fromlist=["TraceRecorder"]).TraceRecorder()
        engine._clock = __import__("gamesmith.pipeline.engine", fromlist=["VirtualClock"]).VirtualClock()
        engine._totals = {"tokens": 0, "cost_usd": 0.0, "generative_steps": 0}
        engine._allowed_steps = 0
        engine._seed = 42
        ctx = engine.run_phase0(PLANT, None)
        assert set(ctx.knowledge.labels) == {
            "Chloroplast", "Mitochondria", "Cell Wall", "Vacuole", "Nucleus", "Ribosome"
        }
        assert ctx.knowledge.has_labels is True
        assert ctx.knowledge.has_sequence is False
        assert ctx.analysis.bloom.value == "analyze"

    def test_difficulty_extracted_from_context(self):
        result = run_pipeline(
            "Identify each solid shape on the display.",
            context={"difficulty": "advanced"},
            provider=StubProvider(seed=42),
        )
        assert result.success
        assert result.document.blueprint.concept.difficulty.value == "advanced"

    def test_retrieval_miss_flags_and_fails_loudly_at_qg1(self):
        result = run_pipeline(
            "Recount the dream diary of an imaginary walrus.",
            provider=StubProvider(seed=42),
        )
        assert not result.success
        decision, phase = result.failure
        assert phase is PhaseId.CONCEPT_DESIGN
        assert any(f.code.value == "DATA_UNAVAILABLE" for f in decision.failure_codes)


class TestBoundaries:
    def test_forward_edge_accepted(self):
        message = TaggedMessage(
            producing_phase=PhaseId.GAME_PLAN,
            schema_id="input_analysis.v1",
            payload={
                "subject": "Biology",
                "audience": "students",
                "difficulty": "beginner",
                "bloom": "apply",
            },
        )
        assert enforce_boundary(PhaseId.SCENE_CONTENT, message) == []

    def test_backward_edge_is_structural_error(self):
        message = TaggedMessage(
            producing_phase=PhaseId.ASSETS, schema_id="asset_spec.v1", payload={}
        )
        with pytest.raises(BoundaryOrderError):
            enforce_boundary(PhaseId.CONCEPT_DESIGN, message)

    def test_same_phase_edge_rejected(self):
        message = TaggedMessage(
            producing_phase=PhaseId.ASSETS, schema_id="asset_spec.v1", payload={}
        )
        with pytest.raises(BoundaryOrderError):
            enforce_boundary(PhaseId.ASSETS, message)


class TestFanOut:
    def test_results_in_index_order_despite_random_delays(self):
        rng = random.Random(3)

        def worker(index: int, item: int) -> int:
            time.sleep(rng.random() * 0.02)
            return item * 10

        assert fan_out([1, 2, 3, 4, 5], worker, cap=5) == [10, 20, 30, 40, 50]

    def test_shuffled_completion_equals_sequential_run(self):
        # same multi-scene question, concurrent vs serialized workers
        question = "Name the stations, trace the journey, order the steps."

        class SlowStub(StubProvider):
            def generate(self, spec):
                if spec.step_name == "scene_content_generator":
                    time.sleep(random.random() * 0.03)
                return super().generate(spec)

        from gamesmith.pipeline.config import PipelineConfig

        concurrent = PipelineEngine(SlowStub(seed=42)).run(question, seed=42)
        serial_config = PipelineConfig(worker_cap=1)
        sequential = PipelineEngine(StubProvider(seed=42), config=serial_config).run(question, seed=42)
        assert canonical_json(concurrent.to_payload()) == canonical_json(sequential.to_payload())


class TestRetries:
    def test_qg3_exhaustion_exactly_three_invocations_per_scene(self):
        provider = StubProvider(seed=42, script={"scene_content_generator": "op_count_reduction"})
        result = run_pipeline(PLANT, provider=provider, seed=42)
        assert not result.success
        decision, phase = result.failure
        assert phase is PhaseId.SCENE_CONTENT
        assert decision.gate.value == "QG3"
        scene_steps = [
            e
            for e in result.trace
            if e.kind is EventKind.STEP_END and e.step_name == "scene_content_generator"
        ]
        assert len(scene_steps) == 3  # 1 initial + exactly 2 retries

    def test_retry_directive_lists_every_defect_verbatim(self):
        from gamesmith.domain.types import Failure, FailureCode, GateDecision, GateId

        decision = GateDecision(
            gate=GateId.QG1,
            verdict=Verdict.FAIL,
            failure_codes=(
                Failure(FailureCode.DATA_UNAVAILABLE, GateId.QG1, "sequencing lacks sequence data"),
                Failure(FailureCode.LABEL_OVERLAP, GateId.QG1, "distractor overlap: Nucleus"),
                Failure(FailureCode.SCHEMA_INCOMPLETE, GateId.QG1, "missing estimated_duration_minutes"),
            ),
            retry_remaining=1,
        )
        augmented = retry_with_feedback(decision, {"question": PLANT})
        directive = augmented["retry_directive"]
        assert directive.startswith("RETRY: ")
        assert "sequencing lacks sequence data" in directive
        assert "distractor overlap: Nucleus" in directive
        assert "missing estimated_duration_minutes" in directive

    def test_retry_of_a_pass_is_a_precondition_violation(self):
        from gamesmith.domain.types import GateDecision, GateId

        decision = GateDecision(
            gate=GateId.QG1, verdict=Verdict.PASS, failure_codes=(), retry_remaining=1
        )
        with pytest.raises(ValueError):
            retry_with_feedback(decision, {})

    def test_boundary_rejection_recovers_via_one_retry(self):
        # corrupt the analyzer output once; the clean retry must succeed
        class OneShotCorruptor(StubProvider):
            def __init__(self):
                super().__init__(seed=42)
                self.fired = False

            def generate(self, spec):
                output = super().generate(spec)
                if spec.step_name == "input_analyzer" and not self.fired:
                    self.fired = True
                    payload = dict(output.payload)
                    del payload["bloom"]
                    return type(output)(payload=payload, usage=output.usage, latency_ms=output.latency_ms)
                return output

        result = run_pipeline(PLANT, provider=OneShotCorruptor(), seed=42)
        assert result.success
        rejects = [e for e in result.trace if e.kind is EventKind.BOUNDARY_REJECT]
        assert len(rejects) == 1
        assert rejects[0].step_name == "input_analyzer"


class TestIsolation:
    def test_failing_scene_never_mutates_siblings(self):
        question = "Name the stations, trace the journey, order the steps."

        class SceneOneKiller(StubProvider):
            def generate(self, spec):
                output = super().generate(spec)
                if (
                    spec.step_name == "scene_content_generator"
                    and spec.task_payload.get("scene_index") == 1
                ):
                    payload = __import__("copy").deepcopy(output.payload)
                    for unit in payload["units"]:
                        for element in unit["elements"]:
                            element["feedback_text"] = f"{element['label']} noted."
                    return type(output)(payload=payload, usage=output.usage, latency_ms=output.latency_ms)
                return output

        clean = run_pipeline(question, provider=StubProvider(seed=42), seed=42)
        failing = run_pipeline(question, provider=SceneOneKiller(seed=42), seed=42)
        assert clean.success and not failing.success
        decision, phase = failing.failure
        assert phase is PhaseId.SCENE_CONTENT and decision.scene_index == 1

        def scene_output_digests(result):
            return [
                e.payload_digest
                for e in result.trace
                if e.kind is EventKind.STEP_END and e.step_name == "scene_content_generator"
            ]

        clean_digests = scene_output_digests(clean)
        failing_digests = set(scene_output_digests(failing))
        assert len(clean_digests) == 3
        # siblings (scenes 0 and 2) produced byte-identical outputs in both
        # runs; only the corrupted scene's digest diverges
        shared = [d for d in clean_digests if d in failing_digests]
        assert len(shared) == 2


class TestConfig:
    def test_preset_file_round_trip(self, tmp_path):
        import json

        from gamesmith.pipeline.config import PipelineConfig

        config_path = tmp_path / "pipeline.json"
        config_path.write_text(
            json.dumps(
                {
                    "steps": {
                        "concept_designer": {"model_id": "text-calib", "temperature": 0.1},
                        "asset_worker@interactive_diagram": {"model_id": "vision-calib"},
                    },
                    "retry_budgets": {"QG1": 1, "QG2": 1, "QG3": 2, "QG4": 0, "boundary": 1},
                    "worker_cap": 4,
                }
            ),
            encoding="utf-8",
        )
        config = PipelineConfig.from_file(config_path)
        assert config.worker_cap == 4
        assert config.retry_policy.qg3_per_scene == 2
        preset = config.preset_for("concept_designer", seed=42)
        assert preset.temperature == 0.1 and preset.seed == 42
        from gamesmith.domain import Family

        vision = config.preset_for("asset_worker", seed=42, family=Family.INTERACTIVE_DIAGRAM)
        assert vision.model_id == "vision-calib"
        text = config.preset_for("asset_worker", seed=42, family=Family.INTERACTIVE_ALGORITHM)
        assert text.model_id == "text-calib"

    def test_run_under_config_file_still_deterministic(self, tmp_path):
        import json

        from gamesmith.pipeline.config import PipelineConfig

        config_path = tmp_path / "pipeline.json"
        config_path.write_text(json.dumps({"worker_cap": 2}), encoding="utf-8")
        config = PipelineConfig.from_file(config_path)
        a = PipelineEngine(StubProvider(seed=42), config=config).run(PLANT, seed=42)
        b = PipelineEngine(StubProvider(seed=42), config=config).run(PLANT, seed=42)
        assert canonical_json(a.to_payload()) == canonical_json(b.to_payload())


class TestTransportFailure:
    def test_persistent_provider_failure_becomes_result_failure(self):
        from gamesmith.providers.base import ProviderError

        class DeadProvider:
            deterministic = True

            def generate(self, spec):
                raise ProviderError("socket closed")

        result = PipelineEngine(DeadProvider()).run(PLANT, seed=42)
        assert not result.success
        decision, phase = result.failure
        assert phase is PhaseId.CONTEXT_GATHERING
        assert "provider failure" in decision.failure_codes[0].detail


class TestDegradedDelivery:
    def test_missing_hints_ship_as_degraded_document(self):
        from gamesmith.providers.faults import HINT_STRIP

        provider = StubProvider(seed=42, script={"scene_content_generator": HINT_STRIP})
        result = run_pipeline(PLANT, provider=provider, seed=42)
        assert result.success
        document = result.document
        assert document.is_degraded is True
        final = document.validation_certificate[-1]
        assert final.gate.value == "QG4" and final.verdict is Verdict.DEGRADED_PASS

    def test_clean_run_is_never_degraded(self, corpus_results):
        for result in corpus_results.values():
            assert result.document.is_degraded is False
