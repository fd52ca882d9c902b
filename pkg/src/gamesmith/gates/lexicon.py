"""Cue-verb lexicon used by the feedback-entailment predicate.

Seeded from the Anderson & Krathwohl action-verb lists; level sets are
pairwise disjoint so a cue identifies exactly one level. Feedback entails a
level when it names its element and carries a cue from that level or any
higher one.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from gamesmith.domain.blooms import BloomLevel

DEFAULT_LEXICON: dict[BloomLevel, frozenset[str]] = {
    BloomLevel.REMEMBER: frozenset(
        {"recall", "list", "name", "identify", "locate", "label", "recognize", "state", "memorize"}
    ),
    BloomLevel.UNDERSTAND: frozenset(
        {"explain", "describe", "summarize", "interpret", "paraphrase", "illustrate", "restate"}
    ),
    BloomLevel.APPLY: frozenset(
        {"apply", "execute", "use", "implement", "solve", "demonstrate", "compute", "trace", "carry out"}
    ),
    BloomLevel.ANALYZE: frozenset(
        {
            "analyze",
            "classify",
            "differentiate",
            "compare",
            "deconstruct",
            "organize",
            "distinguish",
            "examine",
            "categorize",
            "contrast",
        }
    ),
    BloomLevel.EVALUATE: frozenset(
        {"judge", "critique", "justify", "assess", "evaluate", "defend", "appraise", "recommend", "weigh"}
    ),
    BloomLevel.CREATE: frozenset(
        {"create", "design", "construct", "compose", "formulate", "assemble", "devise", "build", "generate"}
    ),
}

# Simple inflections accepted after a cue stem.
_SUFFIXES = "(?:s|es|ed|d|ing)?"


class BloomLexicon:
    def __init__(self, levels: Mapping[BloomLevel, Iterable[str]] = DEFAULT_LEXICON):
        table: dict[BloomLevel, frozenset[str]] = {}
        seen: dict[str, BloomLevel] = {}
        for level in BloomLevel:
            cues = frozenset(str(c).lower() for c in levels.get(level, ()))
            if not cues:
                raise ValueError(f"lexicon level {level.value} must be non-empty")
            for cue in cues:
                if cue in seen:
                    raise ValueError(f"cue {cue!r} appears in both {seen[cue].value} and {level.value}")
                seen[cue] = level
            table[level] = cues
        self._table = table
        self._patterns = {
            level: re.compile(
                r"\b(?:" + "|".join(re.escape(c) + _SUFFIXES for c in sorted(cues)) + r")\b"
            )
            for level, cues in table.items()
        }

    def cues(self, level: BloomLevel) -> frozenset[str]:
        return self._table[BloomLevel(level)]

    def has_cue(self, text: str, level: BloomLevel) -> bool:
        """True when the text carries a cue of the level or any higher level."""
        lowered = text.lower()
        target = BloomLevel(level)
        return any(
            self._patterns[lv].search(lowered)
            for lv in BloomLevel
            if lv.rank >= target.rank
        )

    def entails(self, feedback: str, label: str, level: BloomLevel) -> bool:
        """Feedback entails a level when it references its element's label and
        carries a cue term at or above the level."""
        if label.lower() not in feedback.lower():
            return False
        return self.has_cue(feedback, level)


DEFAULT = BloomLexicon()
