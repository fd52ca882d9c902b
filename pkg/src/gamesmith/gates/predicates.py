"""First-order predicate trees evaluated over canonical document payloads.

Atoms address fields by dotted path (lists via [i]); universals quantify
over element lists and report every falsifying element as a witness. No
generative inference is involved anywhere: evaluation is a pure function of
the payload.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Any, Union

from gamesmith.domain.blooms import BloomLevel
from gamesmith.gates.lexicon import BloomLexicon, DEFAULT as DEFAULT_LEXICON


class PredicateEvalError(ValueError):
    """An atom referenced a path absent from the document under test."""


_PATH_TOKEN = re.compile(r"([^.\[\]]+)|\[(\d+)\]")


def resolve_path(payload: Any, path: str) -> Any:
    current = payload
    for match in _PATH_TOKEN.finditer(path):
        key, index = match.group(1), match.group(2)
        if key is not None:
            if not isinstance(current, dict) or key not in current:
                raise PredicateEvalError(f"unresolvable path {path!r} at segment {key!r}")
            current = current[key]
        else:
            i = int(index)
            if not isinstance(current, list) or i >= len(current):
                raise PredicateEvalError(f"unresolvable path {path!r} at index {i}")
            current = current[i]
    return current


@dataclass(frozen=True)
class PredicateResult:
    holds: bool
    witnesses: tuple[str, ...] = ()


@dataclass(frozen=True)
class BloomEquals:
    """Equality of two level-valued fields, or one field against a constant."""

    path: str
    expected: Union[str, None] = None  # constant level value
    other_path: Union[str, None] = None

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        left = resolve_path(payload, self.path)
        right = self.expected if self.expected is not None else resolve_path(payload, self.other_path or "")
        holds = BloomLevel(left) == BloomLevel(right)
        return PredicateResult(holds=holds, witnesses=() if holds else (self.path,))


@dataclass(frozen=True)
class IntAtLeast:
    path: str
    threshold: int

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        value = resolve_path(payload, self.path)
        if isinstance(value, bool) or not isinstance(value, int):
            raise PredicateEvalError(f"{self.path!r} is not an integer")
        holds = value >= self.threshold
        return PredicateResult(holds=holds, witnesses=() if holds else (self.path,))


@dataclass(frozen=True)
class CoordInBounds:
    """Fraction pair at (path[i][x_index], path[i][y_index]) within [0,1]^2."""

    path: str
    x_index: int = 1
    y_index: int = 2

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        rows = resolve_path(payload, self.path)
        if not isinstance(rows, list):
            raise PredicateEvalError(f"{self.path!r} is not a list of coordinate rows")
        witnesses = []
        for i, row in enumerate(rows):
            x, y = row[self.x_index], row[self.y_index]
            if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
                witnesses.append(f"{self.path}[{i}]")
        return PredicateResult(holds=not witnesses, witnesses=tuple(witnesses))


@dataclass(frozen=True)
class SetsDisjoint:
    path_a: str
    path_b: str

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        a = resolve_path(payload, self.path_a)
        b = resolve_path(payload, self.path_b)
        if not isinstance(a, list) or not isinstance(b, list):
            raise PredicateEvalError("set-disjointness atoms require list fields")
        overlap = sorted(set(a) & set(b))
        return PredicateResult(holds=not overlap, witnesses=tuple(f"{self.path_a}:{v}" for v in overlap))


@dataclass(frozen=True)
class FeedbackEntails:
    """Universal over elements: feedback_text entails the target level."""

    elements_path: str
    level: str  # level value, resolved per evaluation

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        elements = resolve_path(payload, self.elements_path)
        if not isinstance(elements, list):
            raise PredicateEvalError(f"{self.elements_path!r} is not an element list")
        level = BloomLevel(self.level)
        witnesses = []
        for i, element in enumerate(elements):
            if not isinstance(element, dict) or "feedback_text" not in element or "label" not in element:
                raise PredicateEvalError(f"{self.elements_path}[{i}] lacks label/feedback_text")
            if not lexicon.entails(element["feedback_text"], element["label"], level):
                witnesses.append(f"{self.elements_path}[{i}]")
        return PredicateResult(holds=not witnesses, witnesses=tuple(witnesses))


@dataclass(frozen=True)
class Conjunction:
    children: tuple["Predicate", ...]

    def evaluate(self, payload: Any, lexicon: BloomLexicon) -> PredicateResult:
        witnesses: list[str] = []
        holds = True
        for child in self.children:
            result = child.evaluate(payload, lexicon)
            if not result.holds:
                holds = False
                witnesses.extend(result.witnesses)
        return PredicateResult(holds=holds, witnesses=tuple(witnesses))


Predicate = Union[BloomEquals, IntAtLeast, CoordInBounds, SetsDisjoint, FeedbackEntails, Conjunction]


def eval_predicate(
    predicate: Predicate, payload: Any, lexicon: BloomLexicon = DEFAULT_LEXICON
) -> PredicateResult:
    """Evaluate a predicate tree over a payload dict.

    The truth value matches brute-force evaluation over all quantified
    elements; witnesses list every element falsifying a universal.
    Unresolvable atoms raise PredicateEvalError rather than returning false.
    """
    return predicate.evaluate(payload, lexicon)
