"""Trace events: one record per step boundary, gate decision, or retry."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from gamesmith.domain.types import GateDecision
from gamesmith.domain.validation import Checker, register_schema
from gamesmith.providers.base import Usage


class PhaseId(str, Enum):
    CONTEXT_GATHERING = "context_gathering"
    CONCEPT_DESIGN = "concept_design"
    GAME_PLAN = "game_plan"
    SCENE_CONTENT = "scene_content"
    ASSETS = "assets"
    ASSEMBLY = "assembly"


PHASE_ORDER: tuple[PhaseId, ...] = (
    PhaseId.CONTEXT_GATHERING,
    PhaseId.CONCEPT_DESIGN,
    PhaseId.GAME_PLAN,
    PhaseId.SCENE_CONTENT,
    PhaseId.ASSETS,
    PhaseId.ASSEMBLY,
)


def phase_index(phase: PhaseId) -> int:
    return PHASE_ORDER.index(PhaseId(phase))


class EventKind(str, Enum):
    STEP_START = "step_start"
    STEP_END = "step_end"
    GATE_DECISION = "gate_decision"
    RETRY = "retry"
    BOUNDARY_REJECT = "boundary_reject"


@dataclass(frozen=True)
class TraceEvent:
    timestamp_ms: int
    phase: PhaseId
    step_name: str
    kind: EventKind
    usage: Usage
    cost_usd: float
    payload_digest: str
    gate: Optional[GateDecision] = None
    detail: str = ""

    def to_payload(self) -> dict[str, Any]:
        return {
            "timestamp_ms": self.timestamp_ms,
            "phase": self.phase.value,
            "step_name": self.step_name,
            "kind": self.kind.value,
            "usage": self.usage.to_payload(),
            "cost_usd": self.cost_usd,
            "payload_digest": self.payload_digest,
            "gate": self.gate.to_payload() if self.gate else None,
            "detail": self.detail,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "TraceEvent":
        return cls(
            timestamp_ms=data["timestamp_ms"],
            phase=PhaseId(data["phase"]),
            step_name=data["step_name"],
            kind=EventKind(data["kind"]),
            usage=Usage(
                prompt_tokens=data["usage"]["prompt_tokens"],
                completion_tokens=data["usage"]["completion_tokens"],
            ),
            cost_usd=data["cost_usd"],
            payload_digest=data["payload_digest"],
            gate=GateDecision.from_payload(data["gate"]) if data.get("gate") else None,
            detail=data.get("detail", ""),
        )


def check_trace_event(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.int_field(data, path, "timestamp_ms", minimum=0)
    ck.enum_field(data, path, "phase", PhaseId)
    ck.str_field(data, path, "step_name")
    kind = ck.enum_field(data, path, "kind", EventKind)
    usage = ck.dict_field(data, path, "usage")
    if usage is not None:
        ck.int_field(usage, f"{path}.usage" if path else "usage", "prompt_tokens", minimum=0)
        ck.int_field(usage, f"{path}.usage" if path else "usage", "completion_tokens", minimum=0)
    ck.num_field(data, path, "cost_usd", minimum=0)
    ck.str_field(data, path, "payload_digest", nonempty=False)
    if kind in (EventKind.GATE_DECISION, EventKind.BOUNDARY_REJECT) and usage:
        if usage.get("prompt_tokens") or usage.get("completion_tokens"):
            ck.add(
                f"{path}.usage" if path else "usage",
                "zero tokens on gate/boundary events",
                f"{usage.get('prompt_tokens', 0)}+{usage.get('completion_tokens', 0)}",
            )


register_schema("trace_event.v1", check_trace_event, TraceEvent.from_payload)
