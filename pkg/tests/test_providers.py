"""Stub determinism, fixture store, fault injection, and cost accounting."""

from __future__ import annotations

import math
import random

import pytest

from gamesmith.domain.canonical import canonical_json
from gamesmith.providers import (
    FixtureGapError,
    LedgerEntry,
    ModelPreset,
    PricingTable,
    StepSpec,
    StubProvider,
    UnpricedModelError,
    Usage,
    calibration_pricing,
    estimate_cost,
)
from gamesmith.providers.faults import FAULT_CLASSES, FaultInjector
from gamesmith.providers.stub import MECHANIC_TOKENS


def _concept_spec(seed: int = 42) -> StepSpec:
    return StepSpec(
        step_name="input_analyzer",
        role_prompt="",
        task_payload={"question": "Label the parts of a plant cell.", "context": {}},
        model_preset=ModelPreset(model_id="text-calib", temperature=0.3, seed=seed),
    )


class TestStubDeterminism:
    def test_same_spec_twice_identical_output(self):
        provider = StubProvider(seed=42)
        first = provider.generate(_concept_spec())
        second = provider.generate(_concept_spec())
        assert canonical_json(first.payload) == canonical_json(second.payload)
        assert first.usage == second.usage
        assert first.latency_ms == second.latency_ms

    def test_two_provider_instances_agree(self):
        a = StubProvider(seed=42).generate(_concept_spec())
        b = StubProvider(seed=42).generate(_concept_spec())
        assert canonical_json(a.payload) == canonical_json(b.payload)

    def test_plant_cell_analysis_fixture(self):
        output = StubProvider(seed=42).generate(_concept_spec())
        assert output.payload == {
            "subject": "Biology",
            "audience": "middle school students",
            "difficulty": "intermediate",
            "bloom": "analyze",
        }

    def test_context_override_wins(self):
        spec = StepSpec(
            step_name="input_analyzer",
            role_prompt="",
            task_payload={
                "question": "Explain photosynthesis for beginners",
                "context": {"difficulty": "beginner"},
            },
            model_preset=ModelPreset(model_id="text-calib", seed=42),
        )
        output = StubProvider(seed=42).generate(spec)
        assert output.payload["difficulty"] == "beginner"

    def test_retrieval_miss_sets_empty_flag(self):
        spec = StepSpec(
            step_name="knowledge_retriever",
            role_prompt="",
            task_payload={"question": "What is the airspeed of an unladen swallow?", "context": {}},
            model_preset=ModelPreset(model_id="text-calib", seed=42),
        )
        output = StubProvider(seed=42).generate(spec)
        assert output.payload["empty"] is True
        assert output.payload["labels"] == []


class TestFixtureStore:
    def test_records_one_canonical_file_per_step_digest(self, tmp_path):
        provider = StubProvider(seed=42, fixture_dir=tmp_path)
        provider.generate(_concept_spec())
        files = list(tmp_path.rglob("*.json"))
        assert len(files) == 1
        assert files[0].parent.name == "input_analyzer"

    def test_replay_only_mode_raises_on_gap(self, tmp_path):
        provider = StubProvider(seed=42, fixture_dir=tmp_path, synthesize=False)
        with pytest.raises(FixtureGapError):
            provider.generate(_concept_spec())

    def test_replay_serves_recorded_fixture(self, tmp_path):
        recorder = StubProvider(seed=42, fixture_dir=tmp_path)
        recorded = recorder.generate(_concept_spec())
        replayer = StubProvider(seed=42, fixture_dir=tmp_path, synthesize=False)
        replayed = replayer.generate(_concept_spec())
        assert canonical_json(replayed.payload) == canonical_json(recorded.payload)


class TestFaultInjection:
    def test_rate_zero_never_mutates(self):
        injector = FaultInjector(rate=0.0, seed=1)
        payload = {"difficulty": "beginner"}
        assert injector.maybe_inject("input_analyzer", "d" * 64, payload) is payload
        assert injector.records == []

    def test_chi_square_on_ten_thousand_draws(self):
        # empirical firing rate of the 0.02 injector over 10,000 distinct digests
        injector = FaultInjector(rate=0.02, seed=7)
        fired = 0
        for i in range(10_000):
            payload = {"difficulty": "beginner", "bloom": "apply"}
            mutated = injector.maybe_inject("input_analyzer", f"digest-{i}", payload)
            if mutated is not payload:
                fired += 1
        expected = 10_000 * 0.02
        variance = 10_000 * 0.02 * 0.98
        chi_square = (fired - expected) ** 2 / expected + (
            (10_000 - fired) - (10_000 - expected)
        ) ** 2 / (10_000 - expected)
        assert chi_square < 6.63, f"fired {fired}; chi-square {chi_square} at p=0.01"
        assert abs(fired - expected) < 4 * math.sqrt(variance)

    def test_decisions_are_digest_deterministic(self):
        a = FaultInjector(rate=0.5, seed=3)
        b = FaultInjector(rate=0.5, seed=3)
        for i in range(200):
            payload = {"difficulty": "beginner"}
            out_a = a.maybe_inject("input_analyzer", f"d{i}", payload)
            out_b = b.maybe_inject("input_analyzer", f"d{i}", payload)
            assert canonical_json(out_a) == canonical_json(out_b)

    def test_each_fault_class_produces_schema_detectable_defect(self):
        # every class must map to some applicator that changes the payload
        from gamesmith.providers.faults import _APPLICATORS

        assert set(FAULT_CLASSES) <= set(_APPLICATORS)


class TestCostAccounting:
    def test_empty_ledger_costs_nothing(self):
        assert estimate_cost([], calibration_pricing()) == 0.0

    def test_unpriced_model_is_an_error(self):
        ledger = [LedgerEntry(model_id="mystery-model", usage=Usage(10, 10))]
        with pytest.raises(UnpricedModelError):
            estimate_cost(ledger, calibration_pricing())

    def test_randomized_ledgers_match_naive_summation_oracle(self):
        pricing = calibration_pricing()
        rng = random.Random(11)
        for _ in range(300):
            ledger = [
                LedgerEntry(
                    model_id=rng.choice(["text-calib", "vision-calib"]),
                    usage=Usage(rng.randint(0, 5000), rng.randint(0, 5000)),
                )
                for _ in range(rng.randint(0, 12))
            ]
            # independent oracle: explicit loop over rates
            expected = 0.0
            for entry in ledger:
                rate = pricing.rate_for(entry.model_id)
                expected += entry.usage.prompt_tokens * rate.prompt_per_1k / 1000
                expected += entry.usage.completion_tokens * rate.completion_per_1k / 1000
            assert estimate_cost(ledger, pricing) == pytest.approx(expected, abs=1e-12)

    def test_blended_corpus_rate_reproduces_headline_cost(self):
        # 19,900 tokens at the corpus-blended effective rate lands near $0.46
        pricing = calibration_pricing()
        total_cost = 0.0
        total_tokens = 0
        engine_like = [(m, t) for m, t in MECHANIC_TOKENS.items()]
        for mechanic, tokens in engine_like:
            prompt = int(tokens * 0.75)
            completion = tokens - prompt
            is_diagram = mechanic in (
                "drag_drop", "click_to_identify", "trace_path", "description_matching",
                "sequencing", "sorting", "memory_match", "branching", "compare_contrast",
                "hierarchical",
            )
            asset_share = 0.2 * (tokens - 1600)
            text_tokens = tokens - (asset_share if is_diagram else 0)
            total_cost += pricing.cost_of("text-calib", Usage(int(text_tokens * 0.75), int(text_tokens) - int(text_tokens * 0.75)))
            if is_diagram:
                total_cost += pricing.cost_of(
                    "vision-calib", Usage(int(asset_share * 0.75), int(asset_share) - int(asset_share * 0.75))
                )
            total_tokens += tokens
        per_game_cost = total_cost / 15
        per_game_tokens = total_tokens / 15
        assert per_game_tokens == pytest.approx(20100, abs=1)
        assert 0.44 <= per_game_cost <= 0.48

    def test_mechanic_token_fixtures_match_published_values(self):
        assert MECHANIC_TOKENS["drag_drop"] == 18200
        assert MECHANIC_TOKENS["state_tracer"] == 21300
        assert MECHANIC_TOKENS["description_matching"] == 15800
        assert MECHANIC_TOKENS["constraint_puzzle"] == 26500
        assert sum(MECHANIC_TOKENS.values()) / 15 == pytest.approx(20100, abs=1)


class TestScriptedFaults:
    def test_script_applies_every_time(self):
        provider = StubProvider(seed=42, script={"input_analyzer": "field_deletion"})
        output = provider.generate(_concept_spec())
        assert "bloom" not in output.payload
        assert provider.injector.records[0].fault_class == "field_deletion"


class TestHttpAdapters:
    def _openai_transport(self, fail_first: bool = False):
        import httpx

        calls = {"n": 0}

        def handler(request: httpx.Request) -> httpx.Response:
            calls["n"] += 1
            if fail_first and calls["n"] == 1:
                raise httpx.ConnectError("boom", request=request)
            body = {
                "choices": [{"message": {"content": '{"subject": "Biology"}'}}],
                "usage": {"prompt_tokens": 120, "completion_tokens": 30},
            }
            return httpx.Response(200, json=body)

        return httpx.MockTransport(handler), calls

    def test_openai_adapter_parses_payload_and_usage(self, monkeypatch):
        import httpx

        from gamesmith.providers.http import OpenAIChatProvider

        monkeypatch.setenv("OPENAI_API_KEY", "test-key")
        transport, calls = self._openai_transport()
        provider = OpenAIChatProvider(client=httpx.Client(transport=transport))
        output = provider.generate(_concept_spec())
        assert output.payload == {"subject": "Biology"}
        assert output.usage.prompt_tokens == 120
        assert calls["n"] == 1

    def test_transport_failure_retried_once_then_succeeds(self, monkeypatch):
        import httpx

        from gamesmith.providers.http import OpenAIChatProvider

        monkeypatch.setenv("OPENAI_API_KEY", "test-key")
        transport, calls = self._openai_transport(fail_first=True)
        provider = OpenAIChatProvider(client=httpx.Client(transport=transport))
        output = provider.generate(_concept_spec())
        assert output.payload == {"subject": "Biology"}
        assert calls["n"] == 2

    def test_persistent_transport_failure_is_provider_error(self, monkeypatch):
        import httpx

        from gamesmith.providers import ProviderError
        from gamesmith.providers.http import OpenAIChatProvider

        monkeypatch.setenv("OPENAI_API_KEY", "test-key")

        def always_fail(request: httpx.Request) -> httpx.Response:
            raise httpx.ConnectError("down", request=request)

        provider = OpenAIChatProvider(client=httpx.Client(transport=httpx.MockTransport(always_fail)))
        with pytest.raises(ProviderError):
            provider.generate(_concept_spec())

    def test_missing_credential_is_explicit(self, monkeypatch):
        from gamesmith.providers import ProviderError
        from gamesmith.providers.http import GeminiProvider

        monkeypatch.delenv("GEMINI_API_KEY", raising=False)
        with pytest.raises(ProviderError, match="GEMINI_API_KEY"):
            GeminiProvider().generate(_concept_spec())
