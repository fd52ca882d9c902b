"""Generative-step providers, fault injection, and cost accounting."""

from gamesmith.providers.base import (
    FixtureGapError,
    GenerativeProvider,
    ModelPreset,
    ProviderError,
    StepOutput,
    StepSpec,
    Usage,
)
from gamesmith.providers.faults import FAULT_CLASSES, FaultInjector, FaultRecord, HINT_STRIP
from gamesmith.providers.http import GeminiProvider, OpenAIChatProvider
from gamesmith.providers.knowledge import DEFAULT_STORE, KnowledgeStore, Topic
from gamesmith.providers.pricing import (
    LedgerEntry,
    ModelRate,
    PricingTable,
    UnpricedModelError,
    calibration_pricing,
    estimate_cost,
)
from gamesmith.providers.scenarios import (
    CORPUS_SCENARIOS,
    LIBRARY_SCENARIOS,
    SCENARIOS,
    Scenario,
    scenario_by_key,
    scenario_for_question,
)
from gamesmith.providers.stub import (
    MECHANIC_LATENCY_MS,
    MECHANIC_TOKENS,
    StubProvider,
    build_slot_content,
)

__all__ = [name for name in dir() if not name.startswith("_")]
