"""Domain types, exhaustive schema validation, and canonical round-trips."""

from __future__ import annotations

import copy
import random

import pytest
from hypothesis import given, settings, strategies as st

from gamesmith.domain import (
    BloomLevel,
    GameConcept,
    MechanicType,
    SchemaValidationError,
    UnknownSchemaError,
    bloom_rank,
    parse_document,
    serialize_document,
    validate_message,
)
from gamesmith.domain.blooms import BLOOM_ORDER


def make_concept_payload() -> dict:
    return {
        "title": "Inside the Plant Cell",
        "subject": "Biology",
        "difficulty": "intermediate",
        "narrative_theme": "a guided expedition through a living plant cell",
        "all_zone_labels": ["Chloroplast", "Mitochondria", "Cell Wall", "Vacuole", "Nucleus", "Ribosome"],
        "distractor_labels": ["Flagellum", "Centriole"],
        "scenes": [
            {
                "title": "Scene 1",
                "learning_goal": "label the organelles",
                "zone_labels": ["Chloroplast", "Nucleus"],
                "needs_diagram": True,
                "mechanics": [
                    {
                        "mechanic_type": "drag_drop",
                        "learning_purpose": "spatial placement",
                        "expected_item_count": 6,
                        "advance_trigger": "all_elements_placed",
                    }
                ],
            }
        ],
        "estimated_duration_minutes": 6,
    }


class TestBloomRank:
    def test_base_and_top(self):
        assert bloom_rank(BloomLevel.REMEMBER) == 0
        assert bloom_rank(BloomLevel.CREATE) == 5

    def test_analyze_row(self):
        assert bloom_rank(BloomLevel.ANALYZE) == 3

    def test_all_ranks(self):
        expected = {
            BloomLevel.REMEMBER: 0,
            BloomLevel.UNDERSTAND: 1,
            BloomLevel.APPLY: 2,
            BloomLevel.ANALYZE: 3,
            BloomLevel.EVALUATE: 4,
            BloomLevel.CREATE: 5,
        }
        assert {lv: bloom_rank(lv) for lv in BloomLevel} == expected

    @given(st.sampled_from(list(BloomLevel)), st.sampled_from(list(BloomLevel)))
    def test_order_embedding(self, a, b):
        # strict order embedding: enum order in BLOOM_ORDER iff rank order
        assert (BLOOM_ORDER.index(a) < BLOOM_ORDER.index(b)) == (bloom_rank(a) < bloom_rank(b))

    def test_exactly_six_levels(self):
        assert len(BloomLevel) == 6
        assert sorted(bloom_rank(lv) for lv in BloomLevel) == [0, 1, 2, 3, 4, 5]


class TestValidateMessage:
    def test_valid_concept_has_no_violations(self):
        assert validate_message("game_concept.v1", make_concept_payload()) == []

    def test_distractor_overlap_flagged_at_its_path(self):
        payload = make_concept_payload()
        payload["distractor_labels"] = ["Nucleus", "Flagellum"]
        violations = validate_message("game_concept.v1", payload)
        assert len(violations) == 1
        assert violations[0].path == "distractor_labels"
        assert "Nucleus" in violations[0].found

    def test_missing_duration_flagged_at_its_path(self):
        payload = make_concept_payload()
        del payload["estimated_duration_minutes"]
        violations = validate_message("game_concept.v1", payload)
        assert len(violations) == 1
        assert violations[0].path == "estimated_duration_minutes"
        assert violations[0].found == "missing"

    def test_violations_collect_exhaustively_not_first_failure(self):
        payload = make_concept_payload()
        del payload["estimated_duration_minutes"]
        payload["difficulty"] = "legendary"
        payload["distractor_labels"] = ["Nucleus"]
        violations = validate_message("game_concept.v1", payload)
        paths = {v.path for v in violations}
        assert {"estimated_duration_minutes", "difficulty", "distractor_labels"} <= paths

    def test_unknown_schema_is_an_error_not_success(self):
        with pytest.raises(UnknownSchemaError):
            validate_message("no_such_schema.v9", {})

    def test_determinism_same_payload_same_violations(self):
        payload = make_concept_payload()
        payload["scenes"][0]["zone_labels"].append("Golgi")
        del payload["title"]
        first = validate_message("game_concept.v1", payload)
        second = validate_message("game_concept.v1", copy.deepcopy(payload))
        assert [str(v) for v in first] == [str(v) for v in second]


# Single-field mutations that each break a stated invariant.
_CONCEPT_MUTATIONS = {
    "duration_zero": lambda p: p.update(estimated_duration_minutes=0),
    "scene_count": lambda p: p.update(scenes=p["scenes"] * 5),
    "too_many_mechanics": lambda p: p["scenes"][0].update(
        mechanics=p["scenes"][0]["mechanics"] * 4
    ),
    "item_count_zero": lambda p: p["scenes"][0]["mechanics"][0].update(expected_item_count=0),
    "item_count_over_cap": lambda p: p["scenes"][0]["mechanics"][0].update(expected_item_count=21),
    "zone_not_listed": lambda p: p["scenes"][0]["zone_labels"].append("Golgi"),
    "distractor_overlap": lambda p: p["distractor_labels"].append("Vacuole"),
    "empty_title": lambda p: p.update(title="  "),
    "bad_mechanic": lambda p: p["scenes"][0]["mechanics"][0].update(mechanic_type="quiz"),
    "no_scenes": lambda p: p.update(scenes=[]),
}


@pytest.mark.parametrize("name", sorted(_CONCEPT_MUTATIONS))
def test_mutation_coverage_each_broken_invariant_is_caught(name):
    payload = make_concept_payload()
    _CONCEPT_MUTATIONS[name](payload)
    assert validate_message("game_concept.v1", payload), f"mutation {name} produced no violation"


class TestCanonicalRoundTrip:
    def test_concept_round_trips_byte_identically(self):
        concept = GameConcept.from_payload(make_concept_payload())
        text = serialize_document(concept)
        again = parse_document(text, "game_concept.v1")
        assert serialize_document(again) == text

    def test_canonical_form_is_key_sorted_and_compact(self):
        concept = GameConcept.from_payload(make_concept_payload())
        text = serialize_document(concept)
        assert ": " not in text and ",\n" not in text
        assert text.index('"all_zone_labels"') < text.index('"title"')

    def test_empty_text_is_a_parse_error(self):
        with pytest.raises(SchemaValidationError):
            parse_document("", "game_concept.v1")

    def test_malformed_text_never_yields_partial_objects(self):
        with pytest.raises(SchemaValidationError) as exc:
            parse_document('{"title": "x"}', "game_concept.v1")
        assert len(exc.value.violations) > 3


def test_document_corpus_round_trips(corpus_results):
    # 30 generated documents: parse(serialize(x)) == x, byte-stable.
    documents = [r.document for r in corpus_results.values() if r.success]
    assert len(documents) == 30
    for document in documents:
        text = serialize_document(document)
        again = parse_document(text, "game_document.v1")
        assert serialize_document(again) == text


def test_validation_is_pure_across_shuffled_key_order():
    rng = random.Random(7)
    payload = make_concept_payload()
    items = list(payload.items())
    rng.shuffle(items)
    shuffled = dict(items)
    assert validate_message("game_concept.v1", shuffled) == []
    assert serialize_document(GameConcept.from_payload(shuffled)) == serialize_document(
        GameConcept.from_payload(make_concept_payload())
    )


# hypothesis generator: arbitrary valid concepts yield zero violations and
# round-trip byte-identically (generator + identity property)

_label_st = st.text(
    alphabet="abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ ",
    min_size=1,
    max_size=24,
).filter(lambda s: s.strip())


@st.composite
def valid_concepts(draw):
    zones = draw(st.lists(_label_st, min_size=1, max_size=8, unique=True))
    distractors = draw(
        st.lists(_label_st.filter(lambda s: s not in zones), min_size=0, max_size=3, unique=True)
    )
    mechanics = list(MechanicType)
    n_scenes = draw(st.integers(min_value=1, max_value=4))
    scenes = []
    for i in range(n_scenes):
        n_mech = draw(st.integers(min_value=1, max_value=3))
        scenes.append(
            {
                "title": f"Scene {i + 1}",
                "learning_goal": draw(_label_st),
                "zone_labels": draw(
                    st.lists(st.sampled_from(zones), min_size=0, max_size=len(zones), unique=True)
                ),
                "needs_diagram": draw(st.booleans()),
                "mechanics": [
                    {
                        "mechanic_type": draw(st.sampled_from(mechanics)).value,
                        "learning_purpose": draw(_label_st),
                        "expected_item_count": draw(st.integers(min_value=1, max_value=20)),
                        "advance_trigger": draw(_label_st),
                    }
                    for _ in range(n_mech)
                ],
            }
        )
    return {
        "title": draw(_label_st),
        "subject": draw(_label_st),
        "difficulty": draw(st.sampled_from(["beginner", "intermediate", "advanced"])),
        "narrative_theme": draw(_label_st),
        "all_zone_labels": zones,
        "distractor_labels": distractors,
        "scenes": scenes,
        "estimated_duration_minutes": draw(st.integers(min_value=1, max_value=180)),
    }


@given(valid_concepts())
@settings(max_examples=60, deadline=None)
def test_generated_valid_concepts_pass_and_round_trip(payload):
    assert validate_message("game_concept.v1", payload) == []
    text = serialize_document(GameConcept.from_payload(payload))
    again = parse_document(text, "game_concept.v1")
    assert serialize_document(again) == text
