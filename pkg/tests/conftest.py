from __future__ import annotations

import pytest

from gamesmith.pipeline.engine import PipelineEngine, PipelineResult
from gamesmith.providers.scenarios import CORPUS_SCENARIOS, LIBRARY_SCENARIOS
from gamesmith.providers.stub import StubProvider


@pytest.fixture(scope="session")
def corpus_results() -> dict[str, PipelineResult]:
    """One clean stub run per corpus scenario, keyed by scenario key."""
    engine = PipelineEngine(StubProvider(seed=42))
    return {s.key: engine.run(s.question, seed=42) for s in CORPUS_SCENARIOS}


@pytest.fixture(scope="session")
def library_results() -> dict[str, PipelineResult]:
    engine = PipelineEngine(StubProvider(seed=42))
    return {s.key: engine.run(s.question, seed=42) for s in LIBRARY_SCENARIOS}


@pytest.fixture(scope="session")
def plant_cell_document(corpus_results):
    result = corpus_results["plant_cell_drag"]
    assert result.success
    return result.document
