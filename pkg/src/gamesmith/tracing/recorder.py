"""Append-only trace recorder with a bounded buffer.

One recorder serves one pipeline run. Concurrent workers record into
per-worker buffers that the merge barrier appends in deterministic order;
the recorder itself is locked for safety. When the buffer limit is hit the
recorder flushes synchronously to its sink (backpressure) rather than
dropping events.
"""

from __future__ import annotations

import threading
from pathlib import Path
from typing import Iterable, Optional

from gamesmith.domain.canonical import canonical_json
from gamesmith.tracing.events import EventKind, TraceEvent


class TraceError(ValueError):
    """An event violated the recording rules (pairing, gate usage)."""


class TraceRecorder:
    def __init__(self, buffer_limit: int = 10_000, sink_path: Optional[Path] = None):
        self._events: list[TraceEvent] = []
        self._flushed = 0
        self._open_steps: dict[str, int] = {}
        self._lock = threading.Lock()
        self.buffer_limit = buffer_limit
        self.sink_path = Path(sink_path) if sink_path else None

    def record(self, event: TraceEvent) -> int:
        """Append one event; returns its sequence number."""
        with self._lock:
            name = event.step_name
            if event.kind is EventKind.STEP_START:
                self._open_steps[name] = self._open_steps.get(name, 0) + 1
            elif event.kind is EventKind.STEP_END:
                if not self._open_steps.get(name):
                    raise TraceError(f"step_end without matching step_start: {name}")
                self._open_steps[name] -= 1
            if event.kind in (EventKind.GATE_DECISION, EventKind.BOUNDARY_REJECT) and event.usage.total:
                raise TraceError("gate and boundary events must carry zero usage")
            self._events.append(event)
            if self.sink_path is not None and len(self._events) >= self.buffer_limit:
                self._flush_locked()
            return self._flushed + len(self._events)

    def record_all(self, events: Iterable[TraceEvent]) -> None:
        for event in events:
            self.record(event)

    def _flush_locked(self) -> None:
        if self.sink_path is None:
            return
        with self.sink_path.open("a", encoding="utf-8") as fh:
            for event in self._events:
                fh.write(canonical_json(event.to_payload()) + "\n")
        self._flushed += len(self._events)
        self._events.clear()

    def events(self) -> tuple[TraceEvent, ...]:
        with self._lock:
            if self._flushed:
                raise TraceError("events were flushed to the sink; read the trace file instead")
            return tuple(self._events)


def export_trace(events: Iterable[TraceEvent], path: Path) -> None:
    """Write newline-delimited canonical events; streamable and greppable."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for event in events:
            fh.write(canonical_json(event.to_payload()) + "\n")


def import_trace(path: Path) -> tuple[TraceEvent, ...]:
    import json

    events = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            events.append(TraceEvent.from_payload(json.loads(line)))
    return tuple(events)
