"""Persistent game library: one directory per entry, canonical files only.

Entries are keyed by the content digest of the canonical document, so a
game's id is stable under re-serialization and duplicates are rejected by
construction. Outcome records from play sessions append to the entry.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Optional

from gamesmith.contracts.composition import CompositionKind
from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.canonical import canonical_json, digest_payload
from gamesmith.domain.types import GameDocument
from gamesmith.domain.validation import (
    Checker,
    SchemaValidationError,
    register_schema,
    serialize_document,
    validate_message,
)


@dataclass(frozen=True)
class OutcomeRecord:
    score: float
    interaction_trace: tuple[dict[str, Any], ...]
    inferred_bloom: BloomLevel
    duration_ms: int

    def to_payload(self) -> dict[str, Any]:
        return {
            "score": self.score,
            "interaction_trace": [dict(a) for a in self.interaction_trace],
            "inferred_bloom": self.inferred_bloom.value,
            "duration_ms": self.duration_ms,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "OutcomeRecord":
        return cls(
            score=data["score"],
            interaction_trace=tuple(data["interaction_trace"]),
            inferred_bloom=BloomLevel(data["inferred_bloom"]),
            duration_ms=data["duration_ms"],
        )


def check_outcome_record(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.num_field(data, path, "score", minimum=0)
    ck.enum_field(data, path, "inferred_bloom", BloomLevel)
    ck.int_field(data, path, "duration_ms", minimum=0)
    actions = ck.list_field(data, path, "interaction_trace")
    if actions is not None:
        for i, action in enumerate(actions):
            if not isinstance(action, dict):
                ck.add(f"interaction_trace[{i}]" if not path else f"{path}.interaction_trace[{i}]", "object", action)


register_schema("outcome_record.v1", check_outcome_record, OutcomeRecord.from_payload)


class DuplicateGameError(ValueError):
    pass


class LibraryError(ValueError):
    pass


def game_id_for(document: GameDocument) -> str:
    return digest_payload(document.to_payload())[:16]


def composition_of(document: GameDocument) -> CompositionKind:
    scenes = document.plan.scene_plans
    if len(scenes) > 1:
        return CompositionKind.MULTI_MULTI
    if len(scenes[0].mechanic_slots) > 1:
        return CompositionKind.SINGLE_MULTI
    return CompositionKind.SINGLE_SINGLE


@dataclass(frozen=True)
class LibraryEntry:
    game_id: str
    metadata: dict[str, Any]
    outcomes: tuple[OutcomeRecord, ...] = ()


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


class GameLibrary:
    def __init__(self, root: Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # -- entries ------------------------------------------------------------

    def add(self, document: GameDocument, trace_text: Optional[str] = None) -> str:
        game_id = game_id_for(document)
        entry_dir = self.root / game_id
        if entry_dir.exists():
            raise DuplicateGameError(f"game {game_id} already in library")
        entry_dir.mkdir(parents=True)
        _atomic_write(entry_dir / "document.json", serialize_document(document))
        metadata = {
            "game_id": game_id,
            "subject": document.blueprint.concept.subject,
            "bloom": document.blueprint.bloom.value,
            "mechanics": sorted({m.value for m in document.blueprint.contract_ids}),
            "composition": composition_of(document).value,
            "max_score": document.plan.total_max_score,
            "is_degraded": document.is_degraded,
            "created_at": datetime.now(timezone.utc).isoformat(),
        }
        _atomic_write(entry_dir / "meta.json", canonical_json(metadata))
        if trace_text is not None:
            (entry_dir / "trace.ndjson").write_text(trace_text, encoding="utf-8")
        return game_id

    def ids(self) -> list[str]:
        return sorted(p.name for p in self.root.iterdir() if (p / "document.json").exists())

    def document(self, game_id: str) -> GameDocument:
        path = self.root / game_id / "document.json"
        if not path.exists():
            raise LibraryError(f"no such game: {game_id}")
        from gamesmith.domain.validation import parse_document

        return parse_document(path.read_text(encoding="utf-8"), "game_document.v1")

    def document_text(self, game_id: str) -> str:
        path = self.root / game_id / "document.json"
        if not path.exists():
            raise LibraryError(f"no such game: {game_id}")
        return path.read_text(encoding="utf-8")

    def trace_text(self, game_id: str) -> Optional[str]:
        path = self.root / game_id / "trace.ndjson"
        return path.read_text(encoding="utf-8") if path.exists() else None

    def entry(self, game_id: str) -> LibraryEntry:
        meta_path = self.root / game_id / "meta.json"
        if not meta_path.exists():
            raise LibraryError(f"no such game: {game_id}")
        metadata = json.loads(meta_path.read_text(encoding="utf-8"))
        return LibraryEntry(game_id=game_id, metadata=metadata, outcomes=tuple(self.outcomes(game_id)))

    def entries(self) -> list[LibraryEntry]:
        return [self.entry(game_id) for game_id in self.ids()]

    # -- outcomes -----------------------------------------------------------

    def ingest_outcome(self, game_id: str, payload: dict[str, Any]) -> OutcomeRecord:
        violations = validate_message("outcome_record.v1", payload)
        if violations:
            raise SchemaValidationError("outcome_record.v1", violations)
        record = OutcomeRecord.from_payload(payload)
        document = self.document(game_id)
        max_score = document.plan.total_max_score
        if record.score > max_score + 1e-9:
            raise LibraryError(f"score {record.score} exceeds the game's max_score {max_score}")
        outcomes_path = self.root / game_id / "outcomes.ndjson"
        with outcomes_path.open("a", encoding="utf-8") as fh:
            fh.write(canonical_json(record.to_payload()) + "\n")
        return record

    def outcomes(self, game_id: str) -> list[OutcomeRecord]:
        path = self.root / game_id / "outcomes.ndjson"
        if not path.exists():
            return []
        records = []
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                records.append(OutcomeRecord.from_payload(json.loads(line)))
        return records

    # -- aggregates ---------------------------------------------------------

    def stats(self) -> dict[str, Any]:
        """Recomputed from entries alone; there is no hidden state."""
        entries = self.entries()
        mechanic_counts: dict[str, int] = {}
        composition_counts: dict[str, int] = {kind.value: 0 for kind in CompositionKind}
        bloom_counts: dict[str, int] = {}
        scores: list[float] = []
        score_fractions: list[float] = []
        for entry in entries:
            for mechanic in entry.metadata.get("mechanics", []):
                mechanic_counts[mechanic] = mechanic_counts.get(mechanic, 0) + 1
            composition = entry.metadata.get("composition")
            if composition in composition_counts:
                composition_counts[composition] += 1
            bloom = entry.metadata.get("bloom")
            if bloom:
                bloom_counts[bloom] = bloom_counts.get(bloom, 0) + 1
            max_score = entry.metadata.get("max_score") or 0
            for outcome in entry.outcomes:
                scores.append(outcome.score)
                if max_score:
                    score_fractions.append(outcome.score / max_score)
        total = len(entries)
        return {
            "games": total,
            "mechanic_counts": dict(sorted(mechanic_counts.items())),
            "composition_counts": composition_counts,
            "composition_proportions": {
                kind: (count / total if total else 0.0) for kind, count in composition_counts.items()
            },
            "bloom_counts": dict(sorted(bloom_counts.items())),
            "outcomes": len(scores),
            "mean_score": (sum(scores) / len(scores)) if scores else None,
            "mean_score_fraction": (sum(score_fractions) / len(score_fractions)) if score_fractions else None,
        }
