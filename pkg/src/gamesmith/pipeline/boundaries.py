"""Phase-boundary enforcement: typed messages only ever flow forward."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from gamesmith.domain.types import SchemaViolation
from gamesmith.domain.validation import validate_message
from gamesmith.tracing.events import PhaseId, phase_index


class BoundaryOrderError(RuntimeError):
    """A message tried to cross backward or skip a gate: a structural bug in
    the caller, not a content failure."""


@dataclass(frozen=True)
class TaggedMessage:
    producing_phase: PhaseId
    schema_id: str
    payload: Any


def enforce_boundary(consuming_phase: PhaseId, message: TaggedMessage) -> list[SchemaViolation]:
    """Check a message at a phase boundary.

    Backward or same-phase edges raise BoundaryOrderError; forward edges are
    schema-validated and the violation list (possibly empty) is returned for
    the caller to record as schema-compliance misses.
    """
    if phase_index(message.producing_phase) >= phase_index(consuming_phase):
        raise BoundaryOrderError(
            f"message from {message.producing_phase.value} cannot enter {consuming_phase.value}"
        )
    return validate_message(message.schema_id, message.payload)
