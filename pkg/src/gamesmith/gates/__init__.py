"""Deterministic Quality Gates and the rule-based predicate evaluator."""

from gamesmith.domain.types import Failure, FailureCode, GateDecision, GateId, Verdict
from gamesmith.gates.lexicon import BloomLexicon, DEFAULT as DEFAULT_LEXICON, DEFAULT_LEXICON as LEXICON_TABLE
from gamesmith.gates.predicates import (
    BloomEquals,
    Conjunction,
    CoordInBounds,
    FeedbackEntails,
    IntAtLeast,
    Predicate,
    PredicateEvalError,
    PredicateResult,
    SetsDisjoint,
    eval_predicate,
    resolve_path,
)
from gamesmith.gates.quality import (
    DEFAULT_GATE,
    classify_failure,
    qg1_certify,
    qg2_validate_plan,
    qg3_validate_content,
    qg3_validate_scene,
    qg4_final,
)
from gamesmith.gates.structural import (
    fit_complexity_class,
    out_of_bounds_points,
    overlapping_regions,
    puzzle_first_solution,
    puzzle_satisfiable,
    puzzle_solution_count,
    tree_depth,
)

__all__ = [name for name in dir() if not name.startswith("_")]
