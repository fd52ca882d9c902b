"""Curated knowledge store backing phase-0 retrieval.

Retrieval only ever draws from this store; a question with no matching
topic yields an explicit empty-knowledge record, never open generation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from gamesmith.domain.context import DomainKnowledge

_CONTENT_KINDS = (
    "zone_labels",
    "diagram_geometry",
    "term_descriptions",
    "relations",
    "sequence_steps",
    "path_route",
    "categories",
    "decision_nodes",
    "comparison",
    "tree_nodes",
    "code_trace",
    "buggy_code",
    "algorithm_steps",
    "complexity_samples",
    "puzzle",
)


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9 ]+", " ", text.lower()).strip()


_STOPWORDS = frozenset(
    "a an and are as at by for from in is it of on or the this to what which with".split()
)


def _content_tokens(text: str) -> set[str]:
    return {tok for tok in _normalize(text).split() if tok not in _STOPWORDS}


@dataclass(frozen=True)
class Topic:
    key: str
    subject: str
    title: str
    aliases: tuple[str, ...]
    narrative_theme: str
    raw: dict[str, Any]

    def content_kinds(self) -> frozenset[str]:
        kinds = set()
        if self.raw.get("zone_labels"):
            kinds.add("zone_labels")
        if self.raw.get("descriptions"):
            kinds.add("term_descriptions")
        for kind in _CONTENT_KINDS:
            if kind in ("zone_labels", "term_descriptions"):
                continue
            if self.raw.get(kind):
                kinds.add(kind)
        return frozenset(kinds)

    def knowledge(self) -> DomainKnowledge:
        labels = tuple(self.raw.get("zone_labels", []))
        kinds = self.content_kinds()
        return DomainKnowledge(
            topic_key=self.key,
            labels=labels,
            distractors=tuple(self.raw.get("distractors", [])),
            descriptions=dict(self.raw.get("descriptions", {})),
            has_labels=bool(labels),
            has_sequence=bool(self.raw.get("sequence_steps")),
            has_code=bool(
                self.raw.get("code_trace")
                or self.raw.get("buggy_code")
                or self.raw.get("algorithm_steps")
                or self.raw.get("complexity_samples")
                or self.raw.get("puzzle")
            ),
            empty=False,
            data={"content_kinds": sorted(kinds)},
        )


class KnowledgeStore:
    def __init__(self, topics: list[Topic]):
        self._topics = {t.key: t for t in topics}
        self._alias_index: dict[str, str] = {}
        for topic in topics:
            for alias in topic.aliases:
                self._alias_index[_normalize(alias)] = topic.key

    def topic(self, key: str) -> Topic:
        return self._topics[key]

    def keys(self) -> tuple[str, ...]:
        return tuple(sorted(self._topics))

    def match(self, question: str) -> Optional[Topic]:
        """Deterministic lookup: longest alias contained in the question,
        then best token overlap; None on a retrieval miss."""
        normalized = f" {_normalize(question)} "
        best_key: Optional[str] = None
        best_alias_len = 0
        for alias, key in sorted(self._alias_index.items()):
            if f" {alias} " in normalized and len(alias) > best_alias_len:
                best_key = key
                best_alias_len = len(alias)
        if best_key:
            return self._topics[best_key]

        question_tokens = _content_tokens(question)
        best_overlap = 0
        for key in sorted(self._topics):
            topic = self._topics[key]
            tokens: set[str] = set()
            for alias in topic.aliases + (topic.title,):
                tokens.update(_content_tokens(alias))
            overlap = len(tokens & question_tokens)
            if overlap > best_overlap:
                best_overlap = overlap
                best_key = key
        if best_overlap >= 2 and best_key:
            return self._topics[best_key]
        return None

    @classmethod
    def from_config(cls, raw: dict) -> "KnowledgeStore":
        topics = [
            Topic(
                key=entry["key"],
                subject=entry["subject"],
                title=entry["title"],
                aliases=tuple(entry.get("aliases", [])),
                narrative_theme=entry["narrative_theme"],
                raw=entry,
            )
            for entry in raw["topics"]
        ]
        return cls(topics)

    @classmethod
    def from_file(cls, path: Path) -> "KnowledgeStore":
        return cls.from_config(json.loads(Path(path).read_text(encoding="utf-8")))


def default_store() -> KnowledgeStore:
    raw = resources.files("gamesmith.providers").joinpath("data/knowledge_store.json")
    return KnowledgeStore.from_config(json.loads(raw.read_text(encoding="utf-8")))


DEFAULT_STORE = default_store()
