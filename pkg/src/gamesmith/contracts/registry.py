"""Mechanic contracts and the cognitive-level-to-mechanic constraint table.

The registry loads from a declarative config file so new templates can be
added by contract definition alone; the bundled file covers the standard
fifteen mechanics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from gamesmith.domain.blooms import BloomLevel, bloom_rank
from gamesmith.domain.mechanics import MechanicType

# Constraint table: which mechanics constitute valid evidence at each
# cognitive level. Rows partition the fifteen mechanics.
BLOOM_MECHANIC_TABLE: dict[BloomLevel, frozenset[MechanicType]] = {
    BloomLevel.REMEMBER: frozenset({MechanicType.CLICK_TO_IDENTIFY, MechanicType.MEMORY_MATCH}),
    BloomLevel.UNDERSTAND: frozenset({MechanicType.DRAG_DROP, MechanicType.DESCRIPTION_MATCHING}),
    BloomLevel.APPLY: frozenset(
        {MechanicType.TRACE_PATH, MechanicType.SEQUENCING, MechanicType.STATE_TRACER}
    ),
    BloomLevel.ANALYZE: frozenset(
        {
            MechanicType.SORTING,
            MechanicType.HIERARCHICAL,
            MechanicType.BUG_HUNTER,
            MechanicType.COMPLEXITY_ANALYZER,
        }
    ),
    BloomLevel.EVALUATE: frozenset({MechanicType.COMPARE_CONTRAST, MechanicType.BRANCHING}),
    BloomLevel.CREATE: frozenset({MechanicType.ALGORITHM_BUILDER, MechanicType.CONSTRAINT_PUZZLE}),
}


def mechanics_for_bloom(level: BloomLevel) -> frozenset[MechanicType]:
    """The constraint-table row for a cognitive level."""
    return BLOOM_MECHANIC_TABLE[BloomLevel(level)]


@dataclass(frozen=True)
class MechanicContract:
    mechanic: MechanicType
    interaction_primitive: str
    content_types: tuple[str, ...]
    bloom_range: tuple[BloomLevel, BloomLevel]
    op_count_threshold: int
    completion_condition: str
    needs_diagram: bool
    selection_weight: float
    min_tree_depth: Optional[int] = None

    def __post_init__(self) -> None:
        low, high = self.bloom_range
        if bloom_rank(low) > bloom_rank(high):
            raise ValueError(f"{self.mechanic.value}: bloom_range min exceeds max")
        if self.op_count_threshold < 1:
            raise ValueError(f"{self.mechanic.value}: op_count_threshold must be >= 1")

    def allows_bloom(self, level: BloomLevel) -> bool:
        low, high = self.bloom_range
        return bloom_rank(low) <= bloom_rank(level) <= bloom_rank(high)

    def threshold_for(self, expected_item_count: int) -> int:
        """Effective op-count floor for one game: max(configured, expected items)."""
        return max(self.op_count_threshold, expected_item_count)


class ContractRegistry:
    """Immutable after construction; lookups are pure."""

    # Content-only ordering mechanics must never demand a diagram pane.
    _DIAGRAM_FREE = (MechanicType.SEQUENCING, MechanicType.MEMORY_MATCH)

    def __init__(self, contracts: dict[MechanicType, MechanicContract]):
        missing = set(MechanicType) - set(contracts)
        if missing:
            raise ValueError(f"registry missing contracts: {sorted(m.value for m in missing)}")
        for mechanic in self._DIAGRAM_FREE:
            if contracts[mechanic].needs_diagram:
                raise ValueError(f"{mechanic.value} contract must set needs_diagram=false")
        self._contracts = dict(contracts)

    def contract_for(self, mechanic: MechanicType) -> MechanicContract:
        return self._contracts[MechanicType(mechanic)]

    def all_contracts(self) -> tuple[MechanicContract, ...]:
        return tuple(self._contracts[m] for m in MechanicType)

    @classmethod
    def from_config(cls, raw: dict) -> "ContractRegistry":
        contracts: dict[MechanicType, MechanicContract] = {}
        for entry in raw["contracts"]:
            mechanic = MechanicType(entry["mechanic"])
            low, high = entry["bloom_range"]
            contracts[mechanic] = MechanicContract(
                mechanic=mechanic,
                interaction_primitive=entry["interaction_primitive"],
                content_types=tuple(entry["content_types"]),
                bloom_range=(BloomLevel(low), BloomLevel(high)),
                op_count_threshold=entry["op_count_threshold"],
                completion_condition=entry["completion_condition"],
                needs_diagram=entry["needs_diagram"],
                selection_weight=entry["selection_weight"],
                min_tree_depth=entry.get("min_tree_depth"),
            )
        return cls(contracts)

    @classmethod
    def from_file(cls, path: Path) -> "ContractRegistry":
        return cls.from_config(json.loads(Path(path).read_text(encoding="utf-8")))


def _load_default() -> ContractRegistry:
    raw = resources.files("gamesmith.contracts").joinpath("data/mechanic_contracts.json")
    return ContractRegistry.from_config(json.loads(raw.read_text(encoding="utf-8")))


DEFAULT_REGISTRY = _load_default()


def contract_for(mechanic: MechanicType) -> MechanicContract:
    """Contract lookup against the bundled registry; total over all mechanics."""
    return DEFAULT_REGISTRY.contract_for(mechanic)
