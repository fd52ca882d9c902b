"""Template routing: structural configuration from level, content flags, and complexity."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from gamesmith.domain.blooms import BLOOM_ORDER, BloomLevel, bloom_rank
from gamesmith.domain.mechanics import ALGORITHMIC, Family, MechanicType
from gamesmith.domain.types import FailureCode
from gamesmith.contracts.registry import ContractRegistry, DEFAULT_REGISTRY, mechanics_for_bloom

MAX_SCENES = 4
MAX_MECHANICS_PER_SCENE = 3


class CompositionKind(str, Enum):
    SINGLE_SINGLE = "single_single"
    SINGLE_MULTI = "single_multi"
    MULTI_MULTI = "multi_multi"


class Complexity(str, Enum):
    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"


@dataclass(frozen=True)
class ContentFlags:
    has_labels: bool
    has_sequence: bool
    has_code: bool

    def any(self) -> bool:
        return self.has_labels or self.has_sequence or self.has_code


@dataclass(frozen=True)
class SceneSelection:
    bloom: BloomLevel
    mechanics: tuple[MechanicType, ...]


@dataclass(frozen=True)
class TemplateSelection:
    template: Family
    scenes: tuple[SceneSelection, ...]
    composition_kind: CompositionKind


class UnresolvableRequest(ValueError):
    """No mechanic satisfies the level/data constraints; the request is
    under-specified and must be re-routed by the caller."""


# Flag-level data requirements; the pipeline applies finer checks against the
# actual knowledge record, this table is the routing approximation.
_FLAG_REQUIREMENTS: dict[MechanicType, tuple[str, ...]] = {
    MechanicType.DRAG_DROP: ("has_labels",),
    MechanicType.CLICK_TO_IDENTIFY: ("has_labels",),
    MechanicType.TRACE_PATH: ("has_labels", "has_sequence"),
    MechanicType.DESCRIPTION_MATCHING: ("has_labels",),
    MechanicType.SEQUENCING: ("has_sequence",),
    MechanicType.SORTING: ("has_labels",),
    MechanicType.MEMORY_MATCH: ("has_labels",),
    MechanicType.BRANCHING: ("has_labels",),
    MechanicType.COMPARE_CONTRAST: ("has_labels",),
    MechanicType.HIERARCHICAL: ("has_labels",),
    MechanicType.STATE_TRACER: ("has_code",),
    MechanicType.BUG_HUNTER: ("has_code",),
    MechanicType.ALGORITHM_BUILDER: ("has_code",),
    MechanicType.COMPLEXITY_ANALYZER: ("has_code",),
    MechanicType.CONSTRAINT_PUZZLE: ("has_code",),
}


def flags_support(mechanic: MechanicType, flags: ContentFlags) -> bool:
    return all(getattr(flags, requirement) for requirement in _FLAG_REQUIREMENTS[mechanic])


def compatible(a: MechanicType, b: MechanicType) -> bool:
    """Mechanics may share a scene unless one is algorithmic and the other is not."""
    return (a in ALGORITHMIC) == (b in ALGORITHMIC)


def _ranked(
    mechanics: frozenset[MechanicType], registry: ContractRegistry
) -> list[MechanicType]:
    # Highest selection weight wins; enum order breaks exact ties.
    order = list(MechanicType)
    return sorted(
        mechanics,
        key=lambda m: (-registry.contract_for(m).selection_weight, order.index(m)),
    )


def resolve_template(
    bloom: BloomLevel,
    content_flags: ContentFlags,
    complexity: Complexity,
    registry: ContractRegistry = DEFAULT_REGISTRY,
) -> TemplateSelection:
    """Deterministic structural configuration for a request.

    Raises UnresolvableRequest when no mechanic row supports the level with
    the available data; callers re-route such requests to simpler
    single-scene configurations or reject them.
    """
    if not content_flags.any():
        raise ValueError("content_flags must assert at least one data kind")
    bloom = BloomLevel(bloom)
    complexity = Complexity(complexity)

    def candidates(level: BloomLevel, family: Optional[Family]) -> list[MechanicType]:
        row = {m for m in mechanics_for_bloom(level) if flags_support(m, content_flags)}
        if family is not None:
            row = {m for m in row if m.family is family}
        return _ranked(frozenset(row), registry)

    unrestricted = candidates(bloom, None)
    if not unrestricted:
        raise UnresolvableRequest(
            f"no mechanic supports bloom={bloom.value} with flags {content_flags}"
        )

    # Code-bearing content prefers the algorithm family when it can serve the level.
    family = Family.INTERACTIVE_ALGORITHM if (
        content_flags.has_code
        and any(m.family is Family.INTERACTIVE_ALGORITHM for m in unrestricted)
    ) else Family.INTERACTIVE_DIAGRAM
    primary = candidates(bloom, family)
    if not primary:
        family = unrestricted[0].family
        primary = candidates(bloom, family)

    if complexity is Complexity.LOW:
        scenes = (SceneSelection(bloom=bloom, mechanics=(primary[0],)),)
        return TemplateSelection(template=family, scenes=scenes, composition_kind=CompositionKind.SINGLE_SINGLE)

    if complexity is Complexity.MEDIUM:
        picked = [primary[0]]
        for mech in primary[1:]:
            if len(picked) >= MAX_MECHANICS_PER_SCENE:
                break
            if all(compatible(mech, other) for other in picked):
                picked.append(mech)
        kind = CompositionKind.SINGLE_MULTI if len(picked) > 1 else CompositionKind.SINGLE_SINGLE
        scenes = (SceneSelection(bloom=bloom, mechanics=tuple(picked)),)
        return TemplateSelection(template=family, scenes=scenes, composition_kind=kind)

    # High complexity: causally connected scenes climbing to the target level.
    lower_levels = [
        level
        for level in BLOOM_ORDER
        if level.rank < bloom.rank and candidates(level, family)
    ]
    scene_levels = lower_levels[-(MAX_SCENES - 1):] + [bloom]
    if len(scene_levels) == 1 and len(primary) > 1:
        scene_levels = [bloom, bloom]
    if len(scene_levels) == 1:
        scenes = (SceneSelection(bloom=bloom, mechanics=(primary[0],)),)
        return TemplateSelection(template=family, scenes=scenes, composition_kind=CompositionKind.SINGLE_SINGLE)

    scene_selections = []
    used_at_level: dict[BloomLevel, int] = {}
    for level in scene_levels:
        pool = candidates(level, family)
        offset = used_at_level.get(level, 0) % len(pool)
        scene_selections.append(SceneSelection(bloom=level, mechanics=(pool[offset],)))
        used_at_level[level] = offset + 1
    return TemplateSelection(
        template=family,
        scenes=tuple(scene_selections),
        composition_kind=CompositionKind.MULTI_MULTI,
    )


def validate_composition(
    selection: TemplateSelection, plan_blooms: Optional[list[BloomLevel]] = None
) -> list[FailureCode]:
    """Structural verdict on a composition; empty list means it satisfies the
    scene/mechanic bounds, level monotonicity, and the compatibility matrix."""
    codes: list[FailureCode] = []
    if len(selection.scenes) > MAX_SCENES:
        codes.append(FailureCode.SCENE_COUNT_EXCEEDED)
    for scene in selection.scenes:
        if len(scene.mechanics) > MAX_MECHANICS_PER_SCENE:
            codes.append(FailureCode.MECHANIC_COUNT_EXCEEDED)
            break
    blooms = plan_blooms if plan_blooms is not None else [s.bloom for s in selection.scenes]
    ranks = [bloom_rank(b) for b in blooms]
    if any(ranks[i] > ranks[i + 1] for i in range(len(ranks) - 1)):
        codes.append(FailureCode.BLOOM_NOT_MONOTONE)
    for scene in selection.scenes:
        mechanics = scene.mechanics
        broke = False
        for i in range(len(mechanics)):
            for j in range(i + 1, len(mechanics)):
                if not compatible(mechanics[i], mechanics[j]):
                    codes.append(FailureCode.MECHANIC_INCOMPAT)
                    broke = True
                    break
            if broke:
                break
        if broke:
            break
    return codes
