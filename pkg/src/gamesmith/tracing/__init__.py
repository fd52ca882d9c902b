"""Structured execution traces and their view-mode projections."""

from gamesmith.tracing.events import (
    EventKind,
    PHASE_ORDER,
    PhaseId,
    TraceEvent,
    phase_index,
)
from gamesmith.tracing.projections import TraceProjection, ViewMode, project
from gamesmith.tracing.recorder import TraceError, TraceRecorder, export_trace, import_trace

__all__ = [name for name in dir() if not name.startswith("_")]
