"""Mechanic contracts, the level-to-mechanic table, and template routing."""

from gamesmith.contracts.composition import (
    Complexity,
    CompositionKind,
    ContentFlags,
    SceneSelection,
    TemplateSelection,
    UnresolvableRequest,
    compatible,
    flags_support,
    resolve_template,
    validate_composition,
)
from gamesmith.contracts.registry import (
    BLOOM_MECHANIC_TABLE,
    ContractRegistry,
    DEFAULT_REGISTRY,
    MechanicContract,
    contract_for,
    mechanics_for_bloom,
)

__all__ = [name for name in dir() if not name.startswith("_")]
