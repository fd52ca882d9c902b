"""The three trace view modes: timeline, DAG graph, and per-phase clusters.

Projections are lossless regroupings: every event appears exactly once in
each mode, so the multiset of events is identical across views.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Sequence

from gamesmith.tracing.events import EventKind, PHASE_ORDER, PhaseId, TraceEvent


class ViewMode(str, Enum):
    TIMELINE = "timeline"
    DAG_GRAPH = "dag_graph"
    CLUSTER = "cluster"


@dataclass(frozen=True)
class TraceProjection:
    mode: ViewMode
    complete: bool
    groups: dict[str, list[dict[str, Any]]] = field(default_factory=dict)
    edges: list[tuple[str, str]] = field(default_factory=list)

    def event_count(self) -> int:
        return sum(len(members) for members in self.groups.values())


def _is_complete(events: Sequence[TraceEvent]) -> bool:
    open_steps: set[tuple[str, str]] = set()
    for event in events:
        key = (event.step_name, event.payload_digest)
        if event.kind is EventKind.STEP_START:
            open_steps.add(key)
        elif event.kind is EventKind.STEP_END:
            open_steps.discard(key)
    return not open_steps


def project(events: Sequence[TraceEvent], mode: ViewMode) -> TraceProjection:
    """Group a run's events under the requested view mode."""
    mode = ViewMode(mode)
    complete = _is_complete(events)
    payloads = [e.to_payload() for e in events]

    if mode is ViewMode.TIMELINE:
        order = sorted(range(len(events)), key=lambda i: (events[i].timestamp_ms, i))
        return TraceProjection(
            mode=mode, complete=complete, groups={"timeline": [payloads[i] for i in order]}
        )

    if mode is ViewMode.CLUSTER:
        groups: dict[str, list[dict[str, Any]]] = {}
        for event, payload in zip(events, payloads):
            groups.setdefault(event.phase.value, []).append(payload)
        ordered = {
            phase.value: groups[phase.value] for phase in PHASE_ORDER if phase.value in groups
        }
        return TraceProjection(mode=mode, complete=complete, groups=ordered)

    # DAG graph: one node per executed step/gate, edges mirror the executed
    # phase topology (phase N feeds phase N+1; workers fan out within one).
    groups = {}
    node_phases: dict[str, PhaseId] = {}
    for event, payload in zip(events, payloads):
        node = f"{event.phase.value}/{event.step_name}"
        groups.setdefault(node, []).append(payload)
        node_phases.setdefault(node, event.phase)
    edges: list[tuple[str, str]] = []
    nodes_by_phase: dict[PhaseId, list[str]] = {}
    for node, phase in node_phases.items():
        nodes_by_phase.setdefault(phase, []).append(node)
    executed_phases = [p for p in PHASE_ORDER if p in nodes_by_phase]
    for previous, current in zip(executed_phases, executed_phases[1:]):
        for source in nodes_by_phase[previous]:
            for target in nodes_by_phase[current]:
                edges.append((source, target))
    return TraceProjection(mode=mode, complete=complete, groups=groups, edges=edges)
