"""The fifteen interaction mechanics and their two template families."""

from __future__ import annotations

from enum import Enum


class Family(str, Enum):
    INTERACTIVE_DIAGRAM = "interactive_diagram"
    INTERACTIVE_ALGORITHM = "interactive_algorithm"


class MechanicType(str, Enum):
    DRAG_DROP = "drag_drop"
    CLICK_TO_IDENTIFY = "click_to_identify"
    TRACE_PATH = "trace_path"
    DESCRIPTION_MATCHING = "description_matching"
    SEQUENCING = "sequencing"
    SORTING = "sorting"
    MEMORY_MATCH = "memory_match"
    BRANCHING = "branching"
    COMPARE_CONTRAST = "compare_contrast"
    HIERARCHICAL = "hierarchical"
    STATE_TRACER = "state_tracer"
    BUG_HUNTER = "bug_hunter"
    ALGORITHM_BUILDER = "algorithm_builder"
    COMPLEXITY_ANALYZER = "complexity_analyzer"
    CONSTRAINT_PUZZLE = "constraint_puzzle"

    @property
    def family(self) -> Family:
        return MECHANIC_FAMILIES[self]


_DIAGRAM_MECHANICS = (
    MechanicType.DRAG_DROP,
    MechanicType.CLICK_TO_IDENTIFY,
    MechanicType.TRACE_PATH,
    MechanicType.DESCRIPTION_MATCHING,
    MechanicType.SEQUENCING,
    MechanicType.SORTING,
    MechanicType.MEMORY_MATCH,
    MechanicType.BRANCHING,
    MechanicType.COMPARE_CONTRAST,
    MechanicType.HIERARCHICAL,
)

_ALGORITHM_MECHANICS = (
    MechanicType.STATE_TRACER,
    MechanicType.BUG_HUNTER,
    MechanicType.ALGORITHM_BUILDER,
    MechanicType.COMPLEXITY_ANALYZER,
    MechanicType.CONSTRAINT_PUZZLE,
)

MECHANIC_FAMILIES: dict[MechanicType, Family] = {
    **{m: Family.INTERACTIVE_DIAGRAM for m in _DIAGRAM_MECHANICS},
    **{m: Family.INTERACTIVE_ALGORITHM for m in _ALGORITHM_MECHANICS},
}

# Interaction styles used by the multi-mechanic compatibility rule: zone-based
# mechanics share one diagram, content-only mechanics mix with anything, and
# algorithm mechanics never share a scene with diagram mechanics.
ZONE_BASED: frozenset[MechanicType] = frozenset(
    {MechanicType.DRAG_DROP, MechanicType.CLICK_TO_IDENTIFY, MechanicType.TRACE_PATH}
)
CONTENT_ONLY: frozenset[MechanicType] = frozenset(_DIAGRAM_MECHANICS) - ZONE_BASED
ALGORITHMIC: frozenset[MechanicType] = frozenset(_ALGORITHM_MECHANICS)
