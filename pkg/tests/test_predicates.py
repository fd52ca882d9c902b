"""Predicate evaluator against an independent brute-force oracle."""

from __future__ import annotations

import random

import pytest

from gamesmith.domain import BloomLevel
from gamesmith.gates import (
    BloomEquals,
    Conjunction,
    CoordInBounds,
    FeedbackEntails,
    IntAtLeast,
    PredicateEvalError,
    SetsDisjoint,
    eval_predicate,
)
from gamesmith.gates.lexicon import BloomLexicon, DEFAULT_LEXICON

LEXICON = BloomLexicon()

# Cue words chosen per level for generated feedback.
CUE = {
    BloomLevel.REMEMBER: "recall",
    BloomLevel.UNDERSTAND: "explain",
    BloomLevel.APPLY: "apply",
    BloomLevel.ANALYZE: "compare",
    BloomLevel.EVALUATE: "justify",
    BloomLevel.CREATE: "design",
}


# --- independent oracle: plain loops, no predicate machinery ---------------


def oracle_feedback_entails(elements, level: BloomLevel):
    """Brute-force: for each element, scan every cue of every level at or
    above the target and check label mention."""
    witnesses = []
    for i, element in enumerate(elements):
        text = element["feedback_text"].lower()
        label_ok = element["label"].lower() in text
        cue_ok = False
        for lv in BloomLevel:
            if lv.rank < level.rank:
                continue
            for cue in DEFAULT_LEXICON[lv]:
                for suffix in ("", "s", "es", "ed", "d", "ing"):
                    word = cue + suffix
                    padded = f" {text} "
                    for boundary_pre in (" ", "(", "-", ".", ","):
                        if f"{boundary_pre}{word} " in padded or padded.strip().endswith(word):
                            cue_ok = True
        if not (label_ok and cue_ok):
            witnesses.append(f"elements[{i}]")
    return (not witnesses, witnesses)


def oracle_coords_in_bounds(rows):
    witnesses = [i for i, row in enumerate(rows) if not (0 <= row[1] <= 1 and 0 <= row[2] <= 1)]
    return (not witnesses, witnesses)


# --- randomized document generator -----------------------------------------


def random_scene_payload(rng: random.Random) -> tuple[dict, BloomLevel]:
    level = rng.choice(list(BloomLevel))
    n = rng.randint(1, 20)
    elements = []
    for i in range(n):
        label = f"Item{i}"
        include_cue = rng.random() < 0.8
        include_label = rng.random() < 0.9
        cue_level = rng.choice([lv for lv in BloomLevel if lv.rank >= level.rank]) if include_cue else None
        text_parts = []
        if include_label:
            text_parts.append(f"Correct — {label}:")
        text_parts.append("a fine and thorough note about structure.")
        if cue_level is not None:
            text_parts.append(f"{CUE[cue_level].capitalize()} the surrounding parts.")
        elements.append(
            {
                "label": label,
                "description": "generated",
                "feedback_text": " ".join(text_parts),
                "bloom_tag": level.value,
            }
        )
    points = [
        [f"P{i}", round(rng.uniform(-0.2, 1.2), 3), round(rng.uniform(-0.2, 1.2), 3)]
        for i in range(rng.randint(0, 6))
    ]
    payload = {
        "op_count": rng.randint(0, 12),
        "elements": elements,
        "interaction_spec": {"kind": "trace_path", "points": points},
        "left_set": rng.sample(range(30), rng.randint(0, 6)),
        "right_set": rng.sample(range(30), rng.randint(0, 6)),
        "bloom_a": level.value,
        "bloom_b": rng.choice(list(BloomLevel)).value,
    }
    return payload, level


def test_oracle_equivalence_randomized_corpus():
    """1,200 randomized documents of <= 20 elements: the evaluator must
    agree with the brute-force oracle on every predicate family."""
    rng = random.Random(20260810)
    for _ in range(1200):
        payload, level = random_scene_payload(rng)
        threshold = rng.randint(0, 12)

        got = eval_predicate(IntAtLeast(path="op_count", threshold=threshold), payload)
        assert got.holds == (payload["op_count"] >= threshold)

        got = eval_predicate(FeedbackEntails(elements_path="elements", level=level.value), payload, LEXICON)
        holds, witnesses = oracle_feedback_entails(payload["elements"], level)
        assert got.holds == holds
        assert list(got.witnesses) == witnesses

        got = eval_predicate(CoordInBounds(path="interaction_spec.points"), payload)
        holds, indices = oracle_coords_in_bounds(payload["interaction_spec"]["points"])
        assert got.holds == holds
        assert list(got.witnesses) == [f"interaction_spec.points[{i}]" for i in indices]

        got = eval_predicate(SetsDisjoint(path_a="left_set", path_b="right_set"), payload)
        assert got.holds == (not set(payload["left_set"]) & set(payload["right_set"]))

        got = eval_predicate(
            BloomEquals(path="bloom_a", other_path="bloom_b"), payload
        )
        assert got.holds == (payload["bloom_a"] == payload["bloom_b"])


def test_equality_of_identical_levels_holds():
    payload = {"a": "analyze", "b": "analyze"}
    assert eval_predicate(BloomEquals(path="a", other_path="b"), payload).holds


def test_threshold_comparison_and_witness():
    assert eval_predicate(IntAtLeast(path="op_count", threshold=4), {"op_count": 6}).holds
    result = eval_predicate(IntAtLeast(path="op_count", threshold=4), {"op_count": 3})
    assert not result.holds
    assert result.witnesses == ("op_count",)


def test_universal_entailment_reports_exact_witness():
    level = BloomLevel.ANALYZE
    elements = []
    for i in range(6):
        label = f"Part{i}"
        text = f"Correct — {label}: compare it with its neighbors."
        elements.append({"label": label, "description": "", "feedback_text": text, "bloom_tag": "analyze"})
    elements[3]["feedback_text"] = "Part3 is noted."  # lacks any cue at or above analyze
    payload = {"elements": elements}
    result = eval_predicate(FeedbackEntails(elements_path="elements", level="analyze"), payload, LEXICON)
    assert not result.holds
    assert result.witnesses == ("elements[3]",)


def test_conjunction_collects_witnesses_from_all_children():
    payload = {"op_count": 1, "elements": [{"label": "A", "feedback_text": "A noted", "description": "", "bloom_tag": "apply"}]}
    predicate = Conjunction(
        children=(
            IntAtLeast(path="op_count", threshold=3),
            FeedbackEntails(elements_path="elements", level="apply"),
        )
    )
    result = eval_predicate(predicate, payload, LEXICON)
    assert not result.holds
    assert set(result.witnesses) == {"op_count", "elements[0]"}


def test_unresolvable_atom_is_an_error_not_false():
    with pytest.raises(PredicateEvalError):
        eval_predicate(IntAtLeast(path="missing.field", threshold=1), {"op_count": 5})


def test_lexicon_levels_are_pairwise_disjoint_and_nonempty():
    seen = {}
    for level, cues in DEFAULT_LEXICON.items():
        assert cues, level
        for cue in cues:
            assert cue not in seen, f"{cue} in both {seen.get(cue)} and {level}"
            seen[cue] = level


def test_lexicon_rejects_overlapping_config():
    bad = {lv: set(DEFAULT_LEXICON[lv]) for lv in BloomLevel}
    bad[BloomLevel.REMEMBER] = set(bad[BloomLevel.REMEMBER]) | {"compare"}
    with pytest.raises(ValueError):
        BloomLexicon(bad)
