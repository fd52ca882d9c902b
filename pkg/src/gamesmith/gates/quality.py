"""The four deterministic Quality Gates.

Each gate is a pure function of its input document: identical input,
identical decision, zero generative calls. Failures carry closed-set codes
so retry directives and the failure taxonomy stay machine-readable.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union

from gamesmith.contracts.composition import (
    SceneSelection,
    TemplateSelection,
    CompositionKind,
    validate_composition,
)
from gamesmith.contracts.registry import ContractRegistry, DEFAULT_REGISTRY, MechanicContract
from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.types import (
    AssetKind,
    ClickRegionSpec,
    ComplexityTableSpec,
    Failure,
    FailureCode,
    GameBlueprint,
    GameDocument,
    GamePlan,
    GateDecision,
    GateId,
    PathTraceSpec,
    PuzzleSpec,
    SceneContent,
    ScenePlan,
    SchemaViolation,
    TreeSpec,
    Verdict,
)
from gamesmith.domain.validation import validate_message
from gamesmith.gates.lexicon import BloomLexicon, DEFAULT as DEFAULT_LEXICON
from gamesmith.gates.predicates import FeedbackEntails, IntAtLeast, eval_predicate
from gamesmith.gates.structural import (
    fit_complexity_class,
    out_of_bounds_points,
    overlapping_regions,
    puzzle_satisfiable,
    tree_depth,
)

# Gate a code is attributed to when a defect arrives without gate context.
DEFAULT_GATE: dict[FailureCode, GateId] = {
    FailureCode.BLOOM_OP_COUNT_FAIL: GateId.QG3,
    FailureCode.ANCHOR_OOB: GateId.QG3,
    FailureCode.ASSET_SCHEMA_MISMATCH: GateId.QG2,
    FailureCode.DEPTH_MISMATCH: GateId.QG3,
    FailureCode.CONSTRAINT_UNSAT: GateId.QG3,
    FailureCode.CLASS_MISMATCH: GateId.QG3,
    FailureCode.BLOOM_MISMATCH: GateId.QG1,
    FailureCode.FEEDBACK_ENTAILMENT_FAIL: GateId.QG3,
    FailureCode.SCENE_COUNT_EXCEEDED: GateId.QG1,
    FailureCode.BLOOM_NOT_MONOTONE: GateId.QG2,
    FailureCode.REGION_OVERLAP: GateId.QG3,
    FailureCode.SCORE_CONTRACT_VIOLATION: GateId.QG2,
    FailureCode.MECHANIC_COUNT_EXCEEDED: GateId.QG1,
    FailureCode.MECHANIC_INCOMPAT: GateId.QG1,
    FailureCode.DATA_UNAVAILABLE: GateId.QG1,
    FailureCode.LABEL_OVERLAP: GateId.QG1,
    FailureCode.SCHEMA_INCOMPLETE: GateId.QG4,
    FailureCode.UNKNOWN_DEFECT: GateId.QG4,
}


def _decision(
    gate: GateId,
    failures: list[Failure],
    retry_remaining: int,
    *,
    soft_failures: Optional[list[Failure]] = None,
    per_element_report: Sequence[str] = (),
    scene_index: Optional[int] = None,
) -> GateDecision:
    soft_failures = soft_failures or []
    if failures:
        verdict = Verdict.FAIL
        codes = failures + soft_failures
    elif soft_failures:
        verdict = Verdict.DEGRADED_PASS if gate is GateId.QG4 else Verdict.FAIL
        codes = soft_failures
    else:
        verdict = Verdict.PASS
        codes = []
    return GateDecision(
        gate=gate,
        verdict=verdict,
        failure_codes=tuple(codes),
        retry_remaining=retry_remaining,
        per_element_report=tuple(per_element_report),
        scene_index=scene_index,
    )


# --------------------------------------------------------------------------
# QG1: blueprint certification
# --------------------------------------------------------------------------


def _level_assignment_failures(
    blueprint: GameBlueprint, registry: ContractRegistry
) -> list[Failure]:
    """Check that a non-decreasing per-scene level assignment ending at the
    blueprint's target level exists within every mechanic's valid range.

    Single-scene blueprints reduce to: every contract's range contains the
    target level. Multi-scene blueprints may scaffold earlier scenes at
    lower levels, so the check is feasibility of the whole assignment.
    """
    failures: list[Failure] = []
    target = blueprint.bloom.rank
    scenes = blueprint.concept.scenes
    current = 0
    for i, scene in enumerate(scenes):
        low, high = 0, 5
        for mechanic in scene.mechanics:
            contract = registry.contract_for(mechanic.mechanic_type)
            lo, hi = contract.bloom_range
            low = max(low, lo.rank)
            high = min(high, hi.rank)
        names = ", ".join(m.mechanic_type.value for m in scene.mechanics)
        if low > high:
            failures.append(
                Failure(
                    code=FailureCode.BLOOM_MISMATCH,
                    gate=GateId.QG1,
                    detail=f"scene {i}: mechanics {names} have no common valid level",
                )
            )
            continue
        is_final = i == len(scenes) - 1
        wanted = target if is_final else max(current, low)
        if wanted < low or wanted > high or wanted > target or wanted < current:
            failures.append(
                Failure(
                    code=FailureCode.BLOOM_MISMATCH,
                    gate=GateId.QG1,
                    detail=(
                        f"scene {i}: mechanics {names} (levels {low}..{high}) cannot sit in a "
                        f"non-decreasing sequence ending at {blueprint.bloom.value}"
                    ),
                )
            )
            continue
        current = wanted
    return failures


def qg1_certify(
    blueprint: GameBlueprint,
    *,
    available_content: Optional[frozenset[str]] = None,
    registry: ContractRegistry = DEFAULT_REGISTRY,
    retry_remaining: int = 0,
) -> GateDecision:
    """Certify a blueprint before any content generation.

    available_content carries the knowledge store's content kinds for this
    run; pass None when re-verifying a finished document (data evidently
    existed).
    """
    failures: list[Failure] = []
    gate = GateId.QG1

    failures.extend(_level_assignment_failures(blueprint, registry))
    for mechanic in blueprint.contract_ids:
        contract = registry.contract_for(mechanic)
        if mechanic.family is not blueprint.template:
            failures.append(
                Failure(
                    code=FailureCode.MECHANIC_INCOMPAT,
                    gate=gate,
                    detail=f"{mechanic.value} is {mechanic.family.value}, template is {blueprint.template.value}",
                )
            )
        if available_content is not None:
            missing = [kind for kind in contract.content_types if kind not in available_content]
            if missing:
                failures.append(
                    Failure(
                        code=FailureCode.DATA_UNAVAILABLE,
                        gate=gate,
                        detail=f"{mechanic.value} requires {', '.join(missing)}; no such data available",
                    )
                )

    overlap = sorted(set(blueprint.concept.distractor_labels) & set(blueprint.concept.all_zone_labels))
    if overlap:
        failures.append(
            Failure(
                code=FailureCode.LABEL_OVERLAP,
                gate=gate,
                detail=f"distractor_labels overlaps all_zone_labels: {', '.join(overlap)}",
            )
        )

    scenes = blueprint.concept.scenes
    selection = TemplateSelection(
        template=blueprint.template,
        scenes=tuple(
            SceneSelection(
                bloom=blueprint.bloom,
                mechanics=tuple(m.mechanic_type for m in scene.mechanics),
            )
            for scene in scenes
        ),
        composition_kind=CompositionKind.SINGLE_SINGLE,
    )
    for code in validate_composition(selection):
        failures.append(
            Failure(code=code, gate=gate, detail="composition constraint violated at blueprint level")
        )

    for i, scene in enumerate(scenes):
        wants_diagram = any(
            registry.contract_for(m.mechanic_type).needs_diagram for m in scene.mechanics
        )
        if scene.needs_diagram != wants_diagram:
            failures.append(
                Failure(
                    code=FailureCode.SCHEMA_INCOMPLETE,
                    gate=gate,
                    detail=f"scene {i} needs_diagram={scene.needs_diagram} but contracts imply {wants_diagram}",
                )
            )

    return _decision(gate, failures, retry_remaining)


# --------------------------------------------------------------------------
# QG2: plan validation against score contracts
# --------------------------------------------------------------------------

# Plan-level asset requirements per mechanic beyond the generic brief kind.
_REQUIRED_BRIEF_KEYS: dict[str, tuple[str, ...]] = {
    "compare_contrast": ("axis_labels",),
}


def qg2_validate_plan(
    plan: GamePlan,
    *,
    registry: ContractRegistry = DEFAULT_REGISTRY,
    retry_remaining: int = 0,
) -> GateDecision:
    failures: list[Failure] = []
    gate = GateId.QG2

    previous_rank = -1
    for scene in plan.scene_plans:
        prefix = f"scene {scene.scene_index}"
        contract_total = sum(slot.item_count for slot in scene.mechanic_slots)
        expected = scene.score_contract.per_element_points * contract_total
        if abs(expected - scene.score_contract.max_score) > 1e-9:
            failures.append(
                Failure(
                    code=FailureCode.SCORE_CONTRACT_VIOLATION,
                    gate=gate,
                    detail=(
                        f"{prefix}: element points sum to {expected}, "
                        f"max_score is {scene.score_contract.max_score}"
                    ),
                )
            )
        if not scene.score_contract.completion_condition.strip():
            failures.append(
                Failure(
                    code=FailureCode.SCORE_CONTRACT_VIOLATION,
                    gate=gate,
                    detail=f"{prefix}: completion_condition is empty",
                )
            )

        if scene.scene_bloom.rank < previous_rank:
            failures.append(
                Failure(
                    code=FailureCode.BLOOM_NOT_MONOTONE,
                    gate=gate,
                    detail=f"{prefix}: level rank decreases along the scene sequence",
                )
            )
        previous_rank = scene.scene_bloom.rank

        for slot in scene.mechanic_slots:
            contract = registry.contract_for(slot.mechanic)
            if not contract.allows_bloom(scene.scene_bloom):
                failures.append(
                    Failure(
                        code=FailureCode.BLOOM_MISMATCH,
                        gate=gate,
                        detail=f"{prefix}: {slot.mechanic.value} does not accept {scene.scene_bloom.value}",
                    )
                )

        needs_diagram = any(
            registry.contract_for(slot.mechanic).needs_diagram for slot in scene.mechanic_slots
        )
        brief = scene.asset_brief
        kind = brief.get("kind")
        if kind not in ("svg_diagram", "text_visual"):
            failures.append(
                Failure(
                    code=FailureCode.ASSET_SCHEMA_MISMATCH,
                    gate=gate,
                    detail=f"{prefix}: asset brief kind missing or invalid",
                )
            )
        elif needs_diagram and kind != "svg_diagram":
            failures.append(
                Failure(
                    code=FailureCode.ASSET_SCHEMA_MISMATCH,
                    gate=gate,
                    detail=f"{prefix}: diagram mechanics demand an svg_diagram asset",
                )
            )
        if needs_diagram and not brief.get("diagram_labels"):
            failures.append(
                Failure(
                    code=FailureCode.ASSET_SCHEMA_MISMATCH,
                    gate=gate,
                    detail=f"{prefix}: diagram asset brief lacks diagram_labels",
                )
            )
        for slot in scene.mechanic_slots:
            for key in _REQUIRED_BRIEF_KEYS.get(slot.mechanic.value, ()):
                if not brief.get(key):
                    failures.append(
                        Failure(
                            code=FailureCode.ASSET_SCHEMA_MISMATCH,
                            gate=gate,
                            detail=f"{prefix}: {slot.mechanic.value} asset brief lacks {key}",
                        )
                    )

    if plan.scene_plans and plan.scene_plans[-1].scene_bloom is not plan.blueprint.bloom:
        failures.append(
            Failure(
                code=FailureCode.BLOOM_MISMATCH,
                gate=gate,
                detail=(
                    f"final scene targets {plan.scene_plans[-1].scene_bloom.value}, "
                    f"blueprint targets {plan.blueprint.bloom.value}"
                ),
            )
        )

    return _decision(gate, failures, retry_remaining)


# --------------------------------------------------------------------------
# QG3: content validation (alignment predicates + structural checks)
# --------------------------------------------------------------------------


def qg3_validate_content(
    scene: SceneContent,
    blueprint: GameBlueprint,
    contract: MechanicContract,
    *,
    expected_bloom: Optional[BloomLevel] = None,
    expected_items: Optional[int] = None,
    lexicon: BloomLexicon = DEFAULT_LEXICON,
    retry_remaining: int = 0,
) -> GateDecision:
    """Validate one content unit against the three alignment predicate
    families plus its mechanic's structural checks."""
    failures: list[Failure] = []
    report: list[str] = []
    gate = GateId.QG3
    target = expected_bloom or blueprint.bloom
    payload = scene.to_payload()

    mismatched = [e.label for e in scene.elements if e.bloom_tag is not target]
    if mismatched:
        failures.append(
            Failure(
                code=FailureCode.BLOOM_MISMATCH,
                gate=gate,
                detail=f"elements tagged off-target ({target.value}): {', '.join(mismatched)}",
            )
        )

    threshold = contract.threshold_for(expected_items or 0)
    ops = eval_predicate(IntAtLeast(path="op_count", threshold=threshold), payload, lexicon)
    if not ops.holds:
        failures.append(
            Failure(
                code=FailureCode.BLOOM_OP_COUNT_FAIL,
                gate=gate,
                detail=f"op_count {scene.op_count} below contract threshold {threshold}",
            )
        )
        report.extend(ops.witnesses)

    feedback = eval_predicate(
        FeedbackEntails(elements_path="elements", level=target.value), payload, lexicon
    )
    if not feedback.holds:
        failures.append(
            Failure(
                code=FailureCode.FEEDBACK_ENTAILMENT_FAIL,
                gate=gate,
                detail=f"feedback fails to entail {target.value} for {len(feedback.witnesses)} element(s)",
            )
        )
        report.extend(feedback.witnesses)

    failures.extend(_structural_failures(scene, contract))
    return _decision(
        gate, failures, retry_remaining, per_element_report=report, scene_index=scene.scene_index
    )


def _structural_failures(scene: SceneContent, contract: MechanicContract) -> list[Failure]:
    failures: list[Failure] = []
    gate = GateId.QG3
    spec = scene.interaction_spec

    if isinstance(spec, PathTraceSpec):
        bad = out_of_bounds_points([(x, y) for _, x, y in spec.points])
        if bad:
            failures.append(
                Failure(
                    code=FailureCode.ANCHOR_OOB,
                    gate=gate,
                    detail=f"path coordinates outside bounding box at points {bad}",
                )
            )
    elif isinstance(spec, ClickRegionSpec):
        bad = [
            i
            for i, (_, x, y, w, h) in enumerate(spec.regions)
            if not (0.0 <= x and 0.0 <= y and x + w <= 1.0 and y + h <= 1.0 and w > 0 and h > 0)
        ]
        if bad:
            failures.append(
                Failure(
                    code=FailureCode.ANCHOR_OOB,
                    gate=gate,
                    detail=f"regions outside bounding box at indices {bad}",
                )
            )
        overlaps = overlapping_regions(spec)
        if overlaps:
            failures.append(
                Failure(
                    code=FailureCode.REGION_OVERLAP,
                    gate=gate,
                    detail=f"overlapping click regions: {overlaps}",
                )
            )
    elif isinstance(spec, TreeSpec):
        minimum = contract.min_tree_depth or 0
        depth = tree_depth(spec)
        if depth < minimum:
            failures.append(
                Failure(
                    code=FailureCode.DEPTH_MISMATCH,
                    gate=gate,
                    detail=f"tree depth {depth} < contract min {minimum}",
                )
            )
    elif isinstance(spec, PuzzleSpec):
        if not puzzle_satisfiable(spec):
            failures.append(
                Failure(
                    code=FailureCode.CONSTRAINT_UNSAT,
                    gate=gate,
                    detail="rule set has no satisfying assignment over the puzzle domain",
                )
            )
    elif isinstance(spec, ComplexityTableSpec):
        derived = fit_complexity_class(spec.samples)
        if derived != spec.declared_class:
            failures.append(
                Failure(
                    code=FailureCode.CLASS_MISMATCH,
                    gate=gate,
                    detail=f"declared {spec.declared_class}, step table fits {derived}",
                )
            )
    return failures


def qg3_validate_scene(
    units: Sequence[SceneContent],
    plan_scene: ScenePlan,
    blueprint: GameBlueprint,
    *,
    registry: ContractRegistry = DEFAULT_REGISTRY,
    lexicon: BloomLexicon = DEFAULT_LEXICON,
    retry_remaining: int = 0,
) -> GateDecision:
    """Scene-level verdict: every slot's content unit must pass."""
    failures: list[Failure] = []
    report: list[str] = []
    ordered = sorted(units, key=lambda u: u.slot_index)
    if len(ordered) != len(plan_scene.mechanic_slots):
        failures.append(
            Failure(
                code=FailureCode.SCHEMA_INCOMPLETE,
                gate=GateId.QG3,
                detail=(
                    f"scene {plan_scene.scene_index}: {len(ordered)} content units "
                    f"for {len(plan_scene.mechanic_slots)} slots"
                ),
            )
        )
    for unit in ordered:
        if unit.slot_index >= len(plan_scene.mechanic_slots):
            continue
        slot = plan_scene.mechanic_slots[unit.slot_index]
        decision = qg3_validate_content(
            unit,
            blueprint,
            registry.contract_for(slot.mechanic),
            expected_bloom=plan_scene.scene_bloom,
            expected_items=slot.item_count,
            lexicon=lexicon,
            retry_remaining=retry_remaining,
        )
        failures.extend(decision.failure_codes)
        report.extend(decision.per_element_report)
    return _decision(
        GateId.QG3,
        failures,
        retry_remaining,
        per_element_report=report,
        scene_index=plan_scene.scene_index,
    )


# --------------------------------------------------------------------------
# QG4: final document validation
# --------------------------------------------------------------------------


def qg4_final(
    document: GameDocument,
    *,
    registry: ContractRegistry = DEFAULT_REGISTRY,
    retry_remaining: int = 0,
) -> GateDecision:
    """Final check: hard failures reject the document, soft gaps degrade it."""
    failures: list[Failure] = []
    soft: list[Failure] = []
    gate = GateId.QG4

    violations = validate_message("game_document.v1", document.to_payload())
    for violation in violations:
        failures.append(
            Failure(
                code=FailureCode.SCHEMA_INCOMPLETE,
                gate=gate,
                detail=str(violation),
            )
        )

    chain = document.validation_certificate
    passed_gates = {d.gate for d in chain if d.verdict in (Verdict.PASS, Verdict.DEGRADED_PASS)}
    for required in (GateId.QG1, GateId.QG2):
        if required not in passed_gates:
            failures.append(
                Failure(
                    code=FailureCode.SCHEMA_INCOMPLETE,
                    gate=gate,
                    detail=f"certificate chain lacks a passing {required.value} decision",
                )
            )
    certified_scenes = {
        d.scene_index
        for d in chain
        if d.gate is GateId.QG3 and d.verdict is Verdict.PASS and d.scene_index is not None
    }
    for plan_scene in document.plan.scene_plans:
        if plan_scene.scene_index not in certified_scenes:
            failures.append(
                Failure(
                    code=FailureCode.SCHEMA_INCOMPLETE,
                    gate=gate,
                    detail=f"certificate chain lacks a passing QG3 decision for scene {plan_scene.scene_index}",
                )
            )

    assets_by_scene = {asset.scene_index: asset for asset in document.assets}
    for plan_scene in document.plan.scene_plans:
        brief_kind = plan_scene.asset_brief.get("kind")
        asset = assets_by_scene.get(plan_scene.scene_index)
        if asset is None:
            failures.append(
                Failure(
                    code=FailureCode.ASSET_SCHEMA_MISMATCH,
                    gate=gate,
                    detail=f"scene {plan_scene.scene_index} has no asset",
                )
            )
            continue
        if brief_kind == "svg_diagram" and asset.kind is not AssetKind.SVG_DIAGRAM:
            failures.append(
                Failure(
                    code=FailureCode.ASSET_SCHEMA_MISMATCH,
                    gate=gate,
                    detail=f"scene {plan_scene.scene_index} asset kind {asset.kind.value} != svg_diagram",
                )
            )
        bad = out_of_bounds_points([(x, y) for _, x, y in asset.anchors])
        if bad:
            failures.append(
                Failure(
                    code=FailureCode.ANCHOR_OOB,
                    gate=gate,
                    detail=f"scene {plan_scene.scene_index} asset anchors out of bounds at {bad}",
                )
            )

    # Soft instructional fields: absence degrades delivery, never blocks it.
    for unit in document.scene_contents:
        if not unit.hint.strip() or not unit.directions.strip():
            soft.append(
                Failure(
                    code=FailureCode.SCHEMA_INCOMPLETE,
                    gate=gate,
                    detail=f"scene {unit.scene_index} slot {unit.slot_index} missing hint/direction text",
                )
            )

    return _decision(gate, failures, retry_remaining, soft_failures=soft)


# --------------------------------------------------------------------------
# Failure classification
# --------------------------------------------------------------------------

_VIOLATION_PATTERNS: tuple[tuple[str, FailureCode], ...] = (
    ("distractor_labels", FailureCode.LABEL_OVERLAP),
    ("anchors", FailureCode.ANCHOR_OOB),
    ("bounding_box", FailureCode.ANCHOR_OOB),
    ("scene_bloom", FailureCode.BLOOM_NOT_MONOTONE),
    ("max_score", FailureCode.SCORE_CONTRACT_VIOLATION),
    ("per_element_points", FailureCode.SCORE_CONTRACT_VIOLATION),
    ("completion_condition", FailureCode.SCORE_CONTRACT_VIOLATION),
    ("scenes", FailureCode.SCENE_COUNT_EXCEEDED),
    ("op_count", FailureCode.BLOOM_OP_COUNT_FAIL),
    ("bloom_tag", FailureCode.BLOOM_MISMATCH),
    ("feedback_text", FailureCode.FEEDBACK_ENTAILMENT_FAIL),
)


def classify_failure(
    defects: Iterable[Union[Failure, SchemaViolation]],
) -> list[FailureCode]:
    """Map every defect to exactly one failure code; unmappable defects
    become UNKNOWN_DEFECT, never a silent drop."""
    codes: list[FailureCode] = []
    for defect in defects:
        if isinstance(defect, Failure):
            codes.append(defect.code)
            continue
        if isinstance(defect, SchemaViolation):
            matched = None
            for needle, code in _VIOLATION_PATTERNS:
                if needle in defect.path:
                    matched = code
                    break
            if matched is None:
                matched = (
                    FailureCode.SCHEMA_INCOMPLETE
                    if defect.found == "missing" or "one of" in defect.expected
                    else FailureCode.UNKNOWN_DEFECT
                )
            codes.append(matched)
            continue
        codes.append(FailureCode.UNKNOWN_DEFECT)
    return codes
