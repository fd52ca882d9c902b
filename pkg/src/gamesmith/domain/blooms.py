"""Cognitive-objective levels and their strict rank order."""

from __future__ import annotations

from enum import Enum


class BloomLevel(str, Enum):
    REMEMBER = "remember"
    UNDERSTAND = "understand"
    APPLY = "apply"
    ANALYZE = "analyze"
    EVALUATE = "evaluate"
    CREATE = "create"

    @property
    def rank(self) -> int:
        return _RANKS[self]


_RANKS: dict[BloomLevel, int] = {
    BloomLevel.REMEMBER: 0,
    BloomLevel.UNDERSTAND: 1,
    BloomLevel.APPLY: 2,
    BloomLevel.ANALYZE: 3,
    BloomLevel.EVALUATE: 4,
    BloomLevel.CREATE: 5,
}

BLOOM_ORDER: tuple[BloomLevel, ...] = tuple(sorted(BloomLevel, key=lambda lv: _RANKS[lv]))


def bloom_rank(level: BloomLevel) -> int:
    """Rank of a level in the six-step cognitive ladder (remember=0 .. create=5)."""
    return _RANKS[BloomLevel(level)]


def levels_at_or_above(level: BloomLevel) -> tuple[BloomLevel, ...]:
    return tuple(lv for lv in BLOOM_ORDER if lv.rank >= level.rank)
