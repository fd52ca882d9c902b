"""Six-phase DAG engine with typed boundaries and bounded retries."""

from gamesmith.pipeline.boundaries import BoundaryOrderError, TaggedMessage, enforce_boundary
from gamesmith.pipeline.config import PipelineConfig, RetryPolicy
from gamesmith.pipeline.engine import (
    PipelineEngine,
    PipelineResult,
    SystemClock,
    VirtualClock,
    fan_out,
    retry_with_feedback,
    run_pipeline,
)
from gamesmith.tracing.events import PhaseId

__all__ = [name for name in dir() if not name.startswith("_")]
