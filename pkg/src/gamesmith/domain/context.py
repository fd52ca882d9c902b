"""Phase-0 outputs: question analysis and curated domain knowledge."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.types import Difficulty


@dataclass(frozen=True)
class InputAnalysis:
    subject: str
    audience: str
    difficulty: Difficulty
    bloom: BloomLevel

    def to_payload(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "audience": self.audience,
            "difficulty": self.difficulty.value,
            "bloom": self.bloom.value,
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "InputAnalysis":
        return cls(
            subject=data["subject"],
            audience=data["audience"],
            difficulty=Difficulty(data["difficulty"]),
            bloom=BloomLevel(data["bloom"]),
        )


@dataclass(frozen=True)
class DomainKnowledge:
    """Retrieval result drawn from the curated knowledge store.

    `data` carries the topic's raw material keyed by content type
    (zone_labels, term_descriptions, sequence_steps, code_trace, ...);
    the has_* flags summarize availability for gate checks.
    """

    topic_key: str
    labels: tuple[str, ...]
    distractors: tuple[str, ...]
    descriptions: dict[str, str]
    has_labels: bool
    has_sequence: bool
    has_code: bool
    empty: bool
    data: dict[str, Any] = field(default_factory=dict)

    def to_payload(self) -> dict[str, Any]:
        return {
            "topic_key": self.topic_key,
            "labels": list(self.labels),
            "distractors": list(self.distractors),
            "descriptions": dict(self.descriptions),
            "has_labels": self.has_labels,
            "has_sequence": self.has_sequence,
            "has_code": self.has_code,
            "empty": self.empty,
            "data": dict(self.data),
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "DomainKnowledge":
        return cls(
            topic_key=data["topic_key"],
            labels=tuple(data["labels"]),
            distractors=tuple(data["distractors"]),
            descriptions=dict(data["descriptions"]),
            has_labels=data["has_labels"],
            has_sequence=data["has_sequence"],
            has_code=data["has_code"],
            empty=data["empty"],
            data=dict(data.get("data", {})),
        )

    @classmethod
    def missing(cls) -> "DomainKnowledge":
        return cls(
            topic_key="",
            labels=(),
            distractors=(),
            descriptions={},
            has_labels=False,
            has_sequence=False,
            has_code=False,
            empty=True,
        )


@dataclass(frozen=True)
class DomainContext:
    """Merge of both phase-0 workers, handed to concept design."""

    question: str
    analysis: InputAnalysis
    knowledge: DomainKnowledge

    def to_payload(self) -> dict[str, Any]:
        return {
            "question": self.question,
            "analysis": self.analysis.to_payload(),
            "knowledge": self.knowledge.to_payload(),
        }

    @classmethod
    def from_payload(cls, data: dict[str, Any]) -> "DomainContext":
        return cls(
            question=data["question"],
            analysis=InputAnalysis.from_payload(data["analysis"]),
            knowledge=DomainKnowledge.from_payload(data["knowledge"]),
        )
