"""Typed artifacts, schema validation, and the canonical document format."""

from gamesmith.domain.blooms import BLOOM_ORDER, BloomLevel, bloom_rank
from gamesmith.domain.canonical import canonical_json, digest_payload, short_digest
from gamesmith.domain.context import DomainContext, DomainKnowledge, InputAnalysis
from gamesmith.domain.mechanics import Family, MechanicType
from gamesmith.domain.types import (
    AssetKind,
    AssetSpec,
    BranchChoice,
    BranchNode,
    BranchSpec,
    BucketSortSpec,
    ClickRegionSpec,
    CompareMatrixSpec,
    ComplexityTableSpec,
    ConceptScene,
    ContentElement,
    Difficulty,
    Failure,
    FailureCode,
    GameBlueprint,
    GameConcept,
    GameDocument,
    GamePlan,
    GateDecision,
    GateId,
    InteractionSpec,
    MechanicSlot,
    OrderSpec,
    PairMatchSpec,
    PathTraceSpec,
    PuzzleRule,
    PuzzleSpec,
    RelationalPairSpec,
    SceneContent,
    SceneMechanic,
    ScenePlan,
    SchemaViolation,
    ScoreContract,
    StateTraceSpec,
    StepOrderSpec,
    TreeSpec,
    Verdict,
    ZonePlacementSpec,
    interaction_spec_from_payload,
)
from gamesmith.domain.validation import (
    SchemaValidationError,
    UnknownSchemaError,
    parse_document,
    register_schema,
    registered_schemas,
    serialize_document,
    validate_message,
)

__all__ = [name for name in dir() if not name.startswith("_")]
