"""Curated scenario corpus: question fixtures with their game designs.

The first thirty scenarios form the regression corpus (two games per
mechanic, keyed by primary mechanic); all fifty form the bundled library
set with the 34/41/25 split of single-mechanic, multi-mechanic, and
multi-scene configurations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from gamesmith.contracts.composition import CompositionKind
from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.mechanics import MechanicType
from gamesmith.domain.types import Difficulty

_B = BloomLevel
_M = MechanicType


@dataclass(frozen=True)
class Scenario:
    key: str
    question: str
    topic: str
    difficulty: Difficulty
    audience: str
    scenes: tuple[tuple[BloomLevel, tuple[MechanicType, ...]], ...]
    primary: MechanicType

    @property
    def bloom(self) -> BloomLevel:
        return self.scenes[-1][0]

    @property
    def composition(self) -> CompositionKind:
        if len(self.scenes) > 1:
            return CompositionKind.MULTI_MULTI
        if len(self.scenes[0][1]) > 1:
            return CompositionKind.SINGLE_MULTI
        return CompositionKind.SINGLE_SINGLE


def _scenario(key, question, topic, difficulty, audience, scenes, primary=None) -> Scenario:
    scenes = tuple((bloom, tuple(mechs)) for bloom, mechs in scenes)
    return Scenario(
        key=key,
        question=question,
        topic=topic,
        difficulty=Difficulty(difficulty),
        audience=audience,
        scenes=scenes,
        primary=primary or scenes[0][1][0],
    )


_MIDDLE = "middle school students"
_HIGH = "high school students"
_UNDERGRAD = "undergraduate students"

SCENARIOS: tuple[Scenario, ...] = (
    # --- regression corpus: one single-mechanic game per mechanic ---
    _scenario("plant_cell_drag", "Label the parts of a plant cell.", "plant_cell",
              "intermediate", _MIDDLE, [(_B.ANALYZE, [_M.DRAG_DROP])]),
    _scenario("solids_click", "Identify each solid shape on the display.", "geometry_solids",
              "beginner", _MIDDLE, [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY])]),
    _scenario("heart_trace", "Trace the path of blood through the heart.", "heart_circulation",
              "intermediate", _MIDDLE, [(_B.APPLY, [_M.TRACE_PATH])]),
    _scenario("grammar_match", "Match each part of speech to what it does in a sentence.", "grammar_terms",
              "beginner", _MIDDLE, [(_B.UNDERSTAND, [_M.DESCRIPTION_MATCHING])]),
    _scenario("mitosis_sequence", "Put the stages of mitosis in order.", "mitosis",
              "intermediate", _HIGH, [(_B.APPLY, [_M.SEQUENCING])]),
    _scenario("animal_sort", "Classify these animals into their groups.", "animal_classification",
              "intermediate", _MIDDLE, [(_B.ANALYZE, [_M.SORTING])]),
    _scenario("fraction_memory", "Pair each fraction term with its meaning.", "fraction_vocabulary",
              "beginner", _MIDDLE, [(_B.REMEMBER, [_M.MEMORY_MATCH])]),
    _scenario("revolution_branch", "Steer the monarchy through the fiscal crisis.", "revolution_choices",
              "advanced", _HIGH, [(_B.EVALUATE, [_M.BRANCHING])]),
    _scenario("sources_compare", "Judge which claims belong to primary or secondary sources.", "primary_sources",
              "advanced", _HIGH, [(_B.EVALUATE, [_M.COMPARE_CONTRAST])]),
    _scenario("feudal_tree", "Organize feudal society into its hierarchy.", "feudal_system",
              "intermediate", _MIDDLE, [(_B.ANALYZE, [_M.HIERARCHICAL])]),
    _scenario("search_trace", "Trace the variables of binary search as it runs.", "binary_search",
              "intermediate", _UNDERGRAD, [(_B.APPLY, [_M.STATE_TRACER])]),
    _scenario("reversal_bugs", "Find the bugs in this list reversal.", "list_reversal_bugs",
              "intermediate", _UNDERGRAD, [(_B.ANALYZE, [_M.BUG_HUNTER])]),
    _scenario("quicksort_build", "Assemble quicksort from its steps.", "quicksort_assembly",
              "advanced", _UNDERGRAD, [(_B.CREATE, [_M.ALGORITHM_BUILDER])]),
    _scenario("loop_class", "Determine how this loop's cost grows.", "loop_growth",
              "intermediate", _UNDERGRAD, [(_B.ANALYZE, [_M.COMPLEXITY_ANALYZER])]),
    _scenario("exam_puzzle", "Design an exam week with no clashes.", "exam_scheduling",
              "advanced", _HIGH, [(_B.CREATE, [_M.CONSTRAINT_PUZZLE])]),
    # --- regression corpus: a second, richer game per mechanic ---
    _scenario("plant_cell_paired", "Map each organelle and how the parts work together.", "plant_cell",
              "advanced", _HIGH, [(_B.ANALYZE, [_M.DRAG_DROP, _M.DESCRIPTION_MATCHING])]),
    _scenario("solids_paired", "Spot each solid and remember its defining feature.", "geometry_solids",
              "beginner", _MIDDLE, [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY, _M.MEMORY_MATCH])]),
    _scenario("heart_paired", "Follow the blood and order the stations of its journey.", "heart_circulation",
              "advanced", _HIGH, [(_B.APPLY, [_M.TRACE_PATH, _M.SEQUENCING])]),
    _scenario("grammar_staged", "From recalling word classes to matching how they work.", "grammar_terms",
              "intermediate", _MIDDLE,
              [(_B.REMEMBER, [_M.MEMORY_MATCH]), (_B.UNDERSTAND, [_M.DESCRIPTION_MATCHING])],
              primary=_M.DESCRIPTION_MATCHING),
    _scenario("mitosis_staged", "Recall the phases of mitosis, then order them.", "mitosis",
              "intermediate", _HIGH,
              [(_B.REMEMBER, [_M.MEMORY_MATCH]), (_B.APPLY, [_M.SEQUENCING])],
              primary=_M.SEQUENCING),
    _scenario("animal_paired", "Sort the animals and build their family tree.", "animal_classification",
              "advanced", _HIGH, [(_B.ANALYZE, [_M.SORTING, _M.HIERARCHICAL])]),
    _scenario("solids_memory", "Match shape names, then find them on the shelf.", "geometry_solids",
              "beginner", _MIDDLE, [(_B.REMEMBER, [_M.MEMORY_MATCH, _M.CLICK_TO_IDENTIFY])]),
    _scenario("ecosystem_branch", "Decide how to handle the invasion and weigh the tradeoffs.", "ecosystem_intervention",
              "advanced", _HIGH, [(_B.EVALUATE, [_M.BRANCHING, _M.COMPARE_CONTRAST])]),
    _scenario("sources_paired", "Weigh the evidence and run the authentication desk.", "primary_sources",
              "advanced", _UNDERGRAD, [(_B.EVALUATE, [_M.COMPARE_CONTRAST, _M.BRANCHING])]),
    _scenario("feudal_paired", "Build the feudal pyramid and sort who owes what.", "feudal_system",
              "intermediate", _MIDDLE, [(_B.ANALYZE, [_M.HIERARCHICAL, _M.SORTING])]),
    _scenario("search_steps", "Step through binary search on a sorted shelf of books.", "binary_search",
              "intermediate", _UNDERGRAD, [(_B.APPLY, [_M.STATE_TRACER])]),
    _scenario("reversal_paired", "Find the bugs, then measure the cost of the fix.", "list_reversal_bugs",
              "advanced", _UNDERGRAD, [(_B.ANALYZE, [_M.BUG_HUNTER, _M.COMPLEXITY_ANALYZER])]),
    _scenario("euclid_staged", "Run Euclid's idea by hand, then rebuild it from parts.", "euclid_gcd",
              "advanced", _UNDERGRAD,
              [(_B.APPLY, [_M.STATE_TRACER]), (_B.CREATE, [_M.ALGORITHM_BUILDER])],
              primary=_M.ALGORITHM_BUILDER),
    _scenario("search_staged", "Trace the search, then name its growth class.", "binary_search",
              "advanced", _UNDERGRAD,
              [(_B.APPLY, [_M.STATE_TRACER]), (_B.ANALYZE, [_M.COMPLEXITY_ANALYZER])],
              primary=_M.COMPLEXITY_ANALYZER),
    _scenario("lab_puzzle", "Solve the lab booking and codify the procedure.", "lab_scheduling",
              "advanced", _UNDERGRAD, [(_B.CREATE, [_M.CONSTRAINT_PUZZLE, _M.ALGORITHM_BUILDER])]),
    # --- library extension: twenty more curated games ---
    _scenario("euclid_trace", "Trace Euclid's algorithm finding a gcd.", "euclid_gcd",
              "intermediate", _UNDERGRAD, [(_B.APPLY, [_M.STATE_TRACER])]),
    _scenario("plant_cell_intro", "Find each organelle and match what it does.", "plant_cell",
              "beginner", _MIDDLE, [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY, _M.MEMORY_MATCH])]),
    _scenario("heart_circuit", "Chart the circuit of a red blood cell.", "heart_circulation",
              "intermediate", _HIGH, [(_B.APPLY, [_M.TRACE_PATH, _M.SEQUENCING])]),
    _scenario("water_droplet", "Follow a droplet through the water cycle.", "water_cycle",
              "beginner", _MIDDLE, [(_B.APPLY, [_M.TRACE_PATH, _M.SEQUENCING])]),
    _scenario("animal_wing", "Curate the animal wing: sort, then relate.", "animal_classification",
              "intermediate", _HIGH, [(_B.ANALYZE, [_M.SORTING, _M.HIERARCHICAL])]),
    _scenario("feudal_sort", "Sort medieval roles and map their obligations.", "feudal_system",
              "intermediate", _HIGH, [(_B.ANALYZE, [_M.SORTING, _M.HIERARCHICAL])]),
    _scenario("archive_desk", "Run the archive desk for a day.", "primary_sources",
              "advanced", _HIGH, [(_B.EVALUATE, [_M.COMPARE_CONTRAST, _M.BRANCHING])]),
    _scenario("ecosystem_weigh", "Weigh intervention against observation, then act.", "ecosystem_intervention",
              "advanced", _UNDERGRAD, [(_B.EVALUATE, [_M.COMPARE_CONTRAST, _M.BRANCHING])]),
    _scenario("quicksort_locked", "Rebuild quicksort and lock in its pass order.", "quicksort_assembly",
              "advanced", _UNDERGRAD, [(_B.CREATE, [_M.ALGORITHM_BUILDER, _M.CONSTRAINT_PUZZLE])]),
    _scenario("lab_procedure", "Book the lab, then write the booking procedure.", "lab_scheduling",
              "advanced", _UNDERGRAD, [(_B.CREATE, [_M.CONSTRAINT_PUZZLE, _M.ALGORITHM_BUILDER])]),
    _scenario("reversal_audit", "Audit the reversal routine end to end.", "list_reversal_bugs",
              "advanced", _UNDERGRAD, [(_B.ANALYZE, [_M.BUG_HUNTER, _M.COMPLEXITY_ANALYZER])]),
    _scenario("plant_cell_staged", "Recall the parts, then assemble the living cell.", "plant_cell",
              "intermediate", _MIDDLE,
              [(_B.REMEMBER, [_M.MEMORY_MATCH]), (_B.ANALYZE, [_M.DRAG_DROP])],
              primary=_M.DRAG_DROP),
    _scenario("plant_cell_journey", "From naming organelles to mapping the working cell.", "plant_cell",
              "advanced", _HIGH,
              [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY]), (_B.UNDERSTAND, [_M.DESCRIPTION_MATCHING]),
               (_B.ANALYZE, [_M.DRAG_DROP])],
              primary=_M.DRAG_DROP),
    _scenario("heart_journey", "Learn the chambers, then ride the flow.", "heart_circulation",
              "intermediate", _MIDDLE,
              [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY]), (_B.APPLY, [_M.TRACE_PATH])],
              primary=_M.TRACE_PATH),
    _scenario("animal_tree_staged", "Sort the collection, then assemble the tree of life.", "animal_classification",
              "advanced", _HIGH,
              [(_B.ANALYZE, [_M.SORTING]), (_B.ANALYZE, [_M.HIERARCHICAL])],
              primary=_M.HIERARCHICAL),
    _scenario("roman_staged", "Recall Rome's milestones, then order them.", "roman_timeline",
              "intermediate", _MIDDLE,
              [(_B.REMEMBER, [_M.MEMORY_MATCH]), (_B.APPLY, [_M.SEQUENCING])],
              primary=_M.SEQUENCING),
    _scenario("search_price", "Search by halves, then price the halving.", "binary_search",
              "advanced", _UNDERGRAD,
              [(_B.APPLY, [_M.STATE_TRACER]), (_B.ANALYZE, [_M.COMPLEXITY_ANALYZER])],
              primary=_M.COMPLEXITY_ANALYZER),
    _scenario("euclid_rebuilt", "From hand-trace to rebuilt algorithm.", "euclid_gcd",
              "advanced", _UNDERGRAD,
              [(_B.APPLY, [_M.STATE_TRACER]), (_B.CREATE, [_M.ALGORITHM_BUILDER])],
              primary=_M.ALGORITHM_BUILDER),
    _scenario("sources_staged", "Read the sources, then judge their weight.", "primary_sources",
              "advanced", _HIGH,
              [(_B.UNDERSTAND, [_M.DESCRIPTION_MATCHING]), (_B.EVALUATE, [_M.COMPARE_CONTRAST])],
              primary=_M.COMPARE_CONTRAST),
    _scenario("water_journey", "Name the stations, trace the journey, order the steps.", "water_cycle",
              "intermediate", _MIDDLE,
              [(_B.REMEMBER, [_M.CLICK_TO_IDENTIFY]), (_B.APPLY, [_M.TRACE_PATH]),
               (_B.APPLY, [_M.SEQUENCING])],
              primary=_M.TRACE_PATH),
)

CORPUS_SCENARIOS: tuple[Scenario, ...] = SCENARIOS[:30]
LIBRARY_SCENARIOS: tuple[Scenario, ...] = SCENARIOS


def _normalize(text: str) -> str:
    return re.sub(r"[^a-z0-9 ]+", " ", text.lower()).strip()


_BY_QUESTION = {_normalize(s.question): s for s in SCENARIOS}
_BY_KEY = {s.key: s for s in SCENARIOS}


def scenario_for_question(question: str) -> Optional[Scenario]:
    return _BY_QUESTION.get(_normalize(question))


def scenario_by_key(key: str) -> Scenario:
    return _BY_KEY[key]
