"""Six-phase pipeline engine.

Phases run strictly in order; every step output is schema-validated at its
phase boundary, every gate decision is recorded, and retries stay within
the per-gate budgets. Workers inside a phase run concurrently but commit
their trace events at the merge barrier in scene-index order, so a run
with a deterministic provider yields a byte-identical PipelineResult.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence, TypeVar

from gamesmith.contracts.registry import ContractRegistry, DEFAULT_REGISTRY
from gamesmith.domain.canonical import canonical_json, digest_payload
from gamesmith.domain.context import DomainContext, DomainKnowledge, InputAnalysis
from gamesmith.domain.mechanics import Family, MechanicType
from gamesmith.domain.types import (
    AssetSpec,
    Failure,
    FailureCode,
    GameBlueprint,
    GameConcept,
    GameDocument,
    GamePlan,
    GateDecision,
    GateId,
    SceneContent,
    SchemaViolation,
    Verdict,
)
from gamesmith.domain.validation import Checker, register_schema, validate_message
from gamesmith.gates.quality import (
    classify_failure,
    qg1_certify,
    qg2_validate_plan,
    qg3_validate_scene,
    qg4_final,
)
from gamesmith.pipeline.boundaries import TaggedMessage, enforce_boundary
from gamesmith.pipeline.config import PipelineConfig
from gamesmith.providers.base import GenerativeProvider, ProviderError, StepOutput, StepSpec, Usage
from gamesmith.tracing.events import EventKind, PhaseId, TraceEvent
from gamesmith.tracing.recorder import TraceRecorder

T = TypeVar("T")

_ROLE_PROMPTS = {
    "input_analyzer": "Extract subject, audience, difficulty, and target cognitive level from the question.",
    "knowledge_retriever": "Retrieve curated domain material for the question; never invent content.",
    "concept_designer": "Design a game concept that matches the objective; explain why each mechanic fits.",
    "game_planner": "Expand the certified blueprint into per-scene plans with score contracts.",
    "scene_content_generator": "Generate one scene's elements, feedback, and interaction spec.",
    "asset_worker": "Produce the scene's visual asset exactly as briefed.",
}


class VirtualClock:
    """Deterministic clock driven by provider-reported latencies."""

    def __init__(self) -> None:
        self._now_ms = 0

    def now(self) -> int:
        return self._now_ms

    def advance(self, ms: int) -> None:
        self._now_ms += max(int(ms), 0)


class SystemClock:
    def __init__(self) -> None:
        self._start = time.monotonic()

    def now(self) -> int:
        return int((time.monotonic() - self._start) * 1000)

    def advance(self, ms: int) -> None:  # real time passes on its own
        pass


@dataclass(frozen=True)
class _Draft:
    """Trace event pending its timestamp; committed at the merge barrier."""

    phase: PhaseId
    step_name: str
    kind: EventKind
    usage: Usage
    cost_usd: float
    payload_digest: str
    gate: Optional[GateDecision] = None
    detail: str = ""
    advance_ms: int = 0
    generative: bool = True


@dataclass
class PipelineResult:
    document: Optional[GameDocument]
    failure: Optional[tuple[GateDecision, PhaseId]]
    trace: tuple[TraceEvent, ...]
    totals: dict[str, Any]

    @property
    def success(self) -> bool:
        return self.document is not None

    def to_payload(self) -> dict[str, Any]:
        outcome: dict[str, Any] = {"status": "success" if self.success else "failure"}
        if self.document is not None:
            outcome["document"] = self.document.to_payload()
        if self.failure is not None:
            decision, phase = self.failure
            outcome["failed_gate"] = decision.to_payload()
            outcome["failed_phase"] = phase.value
        return {
            "outcome": outcome,
            "trace": [event.to_payload() for event in self.trace],
            "totals": dict(self.totals),
        }


def _check_pipeline_result(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    outcome = ck.dict_field(data, path, "outcome")
    if outcome is not None and outcome.get("status") not in ("success", "failure"):
        ck.add("outcome.status", "one of ['success', 'failure']", outcome.get("status"))
    ck.list_field(data, path, "trace")
    ck.dict_field(data, path, "totals")


register_schema("pipeline_result.v1", _check_pipeline_result, lambda d: d)


def retry_with_feedback(
    failed: GateDecision | Sequence[SchemaViolation], original_payload: dict[str, Any]
) -> dict[str, Any]:
    """Augment a step input with the verbatim failure codes and details."""
    if isinstance(failed, GateDecision):
        if not failed.failure_codes:
            raise ValueError("retry of a passing decision is not allowed")
        lines = [f"{f.code.value}: {f.detail}" for f in failed.failure_codes]
    else:
        if not failed:
            raise ValueError("retry without defects is not allowed")
        lines = [str(v) for v in failed]
    return {**original_payload, "retry_directive": "RETRY: " + "; ".join(lines)}


def fan_out(items: Sequence[Any], worker: Callable[[int, Any], T], cap: int = 8) -> list[T]:
    """Parallel map with results in input order regardless of completion order."""
    results: list[Optional[T]] = [None] * len(items)
    if not items:
        return []
    max_workers = max(1, min(len(items), cap))
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(worker, i, item): i for i, item in enumerate(items)}
        for future, index in futures.items():
            results[index] = future.result()
    return results  # type: ignore[return-value]


class _PhaseFailure(Exception):
    def __init__(self, phase: PhaseId, decision: GateDecision):
        self.phase = phase
        self.decision = decision
        super().__init__(f"{decision.gate.value} failed in {phase.value}")


@dataclass
class _WorkerResult:
    payload: Optional[dict[str, Any]]
    drafts: list[_Draft]
    violations: list[SchemaViolation] = field(default_factory=list)
    input_digest: str = ""


class PipelineEngine:
    def __init__(
        self,
        provider: GenerativeProvider,
        config: Optional[PipelineConfig] = None,
        registry: ContractRegistry = DEFAULT_REGISTRY,
    ):
        self.provider = provider
        self.config = config or PipelineConfig()
        self.registry = registry

    # -- run state ----------------------------------------------------------

    def run(
        self,
        question: str,
        context: Optional[dict[str, str]] = None,
        seed: int = 42,
        trace_sink: Optional[Any] = None,
    ) -> PipelineResult:
        if not question or not question.strip():
            raise ValueError("question must be non-empty")
        self._recorder = TraceRecorder(sink_path=None)
        self._clock = VirtualClock() if getattr(self.provider, "deterministic", False) else SystemClock()
        self._totals = {"tokens": 0, "cost_usd": 0.0, "generative_steps": 0}
        self._allowed_steps = 0
        self._seed = seed
        policy = self.config.retry_policy

        self._current_phase = PhaseId.CONTEXT_GATHERING
        try:
            ctx = self.run_phase0(question, context)
            blueprint, qg1 = self._phase1_concept(question, ctx)
            plan, qg2 = self._phase2_plan(question, ctx, blueprint)
            contents, qg3s = self._phase3_scenes(question, ctx, plan)
            assets = self._phase4_assets(question, ctx, plan)
            document = self._phase5_assembly(plan, contents, assets, [qg1, qg2, *qg3s])
        except _PhaseFailure as failure:
            return self._finish(None, (failure.decision, failure.phase))
        except ProviderError as exc:
            # transport already retried once inside _execute_step
            decision = GateDecision(
                gate=GateId.QG4,
                verdict=Verdict.FAIL,
                failure_codes=(
                    Failure(
                        code=FailureCode.UNKNOWN_DEFECT,
                        gate=GateId.QG4,
                        detail=f"provider failure after retry: {exc}",
                    ),
                ),
                retry_remaining=0,
            )
            return self._finish(None, (decision, self._current_phase))

        if self._totals["generative_steps"] > self._allowed_steps:
            raise RuntimeError(
                f"bounded-work invariant violated: {self._totals['generative_steps']} steps "
                f"> ceiling {self._allowed_steps}"
            )
        return self._finish(document, None)

    def _finish(
        self, document: Optional[GameDocument], failure: Optional[tuple[GateDecision, PhaseId]]
    ) -> PipelineResult:
        totals = dict(self._totals)
        totals["wall_time_ms"] = self._clock.now()
        return PipelineResult(
            document=document,
            failure=failure,
            trace=self._recorder.events(),
            totals=totals,
        )

    # -- step plumbing ------------------------------------------------------

    def _execute_step(
        self,
        phase: PhaseId,
        step_name: str,
        payload: dict[str, Any],
        family: Optional[Family] = None,
    ) -> tuple[StepOutput, list[_Draft], str]:
        preset = self.config.preset_for(step_name, self._seed, family)
        spec = StepSpec(
            step_name=step_name,
            role_prompt=_ROLE_PROMPTS.get(step_name, ""),
            task_payload=payload,
            model_preset=preset,
        )
        input_digest = spec.payload_digest()
        drafts = [
            _Draft(
                phase=phase,
                step_name=step_name,
                kind=EventKind.STEP_START,
                usage=Usage(0, 0),
                cost_usd=0.0,
                payload_digest=input_digest,
            )
        ]
        try:
            output = self.provider.generate(spec)
        except ProviderError:
            output = self.provider.generate(spec)  # transport retried once
        cost = self.config.pricing.cost_of(preset.model_id, output.usage)
        drafts.append(
            _Draft(
                phase=phase,
                step_name=step_name,
                kind=EventKind.STEP_END,
                usage=output.usage,
                cost_usd=cost,
                payload_digest=digest_payload(output.payload),
                detail=f"in:{input_digest}",
                advance_ms=output.latency_ms,
            )
        )
        return output, drafts, input_digest

    def _commit(self, drafts: Sequence[_Draft]) -> None:
        for draft in drafts:
            event = TraceEvent(
                timestamp_ms=self._clock.now(),
                phase=draft.phase,
                step_name=draft.step_name,
                kind=draft.kind,
                usage=draft.usage,
                cost_usd=draft.cost_usd,
                payload_digest=draft.payload_digest,
                gate=draft.gate,
                detail=draft.detail,
            )
            self._recorder.record(event)
            if draft.kind is EventKind.STEP_END:
                self._totals["tokens"] += draft.usage.total
                self._totals["cost_usd"] += draft.cost_usd
                if draft.generative:
                    self._totals["generative_steps"] += 1
            self._clock.advance(draft.advance_ms)

    def _gate_draft(self, phase: PhaseId, decision: GateDecision, step_name: str) -> _Draft:
        return _Draft(
            phase=phase,
            step_name=step_name,
            kind=EventKind.GATE_DECISION,
            usage=Usage(0, 0),
            cost_usd=0.0,
            payload_digest="",
            gate=decision,
        )

    def _retry_draft(self, phase: PhaseId, step_name: str, detail: str) -> _Draft:
        return _Draft(
            phase=phase,
            step_name=step_name,
            kind=EventKind.RETRY,
            usage=Usage(0, 0),
            cost_usd=0.0,
            payload_digest="",
            detail=detail,
        )

    def _boundary_reject_draft(
        self, phase: PhaseId, step_name: str, input_digest: str, violations: Sequence[SchemaViolation]
    ) -> _Draft:
        summary = "; ".join(str(v) for v in violations[:4])
        return _Draft(
            phase=phase,
            step_name=step_name,
            kind=EventKind.BOUNDARY_REJECT,
            usage=Usage(0, 0),
            cost_usd=0.0,
            payload_digest="",
            detail=f"in:{input_digest} {summary}",
        )

    def _boundary_decision(
        self, gate: GateId, violations: Sequence[SchemaViolation], retry_remaining: int
    ) -> GateDecision:
        failures = tuple(
            Failure(code=code, gate=gate, detail=str(violation))
            for code, violation in zip(classify_failure(list(violations)), violations)
        )
        return GateDecision(
            gate=gate,
            verdict=Verdict.FAIL,
            failure_codes=failures,
            retry_remaining=retry_remaining,
        )

    # -- phase 0: context gathering ----------------------------------------

    def run_phase0(self, question: str, context: Optional[dict[str, str]]) -> DomainContext:
        """Two parallel analysis/retrieval nodes merged into one context."""
        phase = PhaseId.CONTEXT_GATHERING
        budget = self.config.retry_policy.boundary
        self._allowed_steps += 2 * (1 + budget)
        base_payload = {"question": question, "context": context or {}}
        nodes = (
            ("input_analyzer", "input_analysis.v1"),
            ("knowledge_retriever", "domain_knowledge.v1"),
        )

        def worker(index: int, node: tuple[str, str]) -> _WorkerResult:
            step_name, schema_id = node
            payload = dict(base_payload)
            drafts: list[_Draft] = []
            attempts = 1 + budget
            last_violations: list[SchemaViolation] = []
            last_digest = ""
            while attempts > 0:
                attempts -= 1
                output, step_drafts, input_digest = self._execute_step(phase, step_name, payload)
                drafts.extend(step_drafts)
                message = TaggedMessage(producing_phase=phase, schema_id=schema_id, payload=output.payload)
                violations = enforce_boundary(PhaseId.CONCEPT_DESIGN, message)
                if not violations:
                    return _WorkerResult(payload=output.payload, drafts=drafts, input_digest=input_digest)
                drafts.append(self._boundary_reject_draft(phase, step_name, input_digest, violations))
                last_violations, last_digest = violations, input_digest
                if attempts > 0:
                    payload = retry_with_feedback(violations, base_payload)
                    drafts.append(self._retry_draft(phase, step_name, payload["retry_directive"]))
            return _WorkerResult(payload=None, drafts=drafts, violations=last_violations, input_digest=last_digest)

        results = fan_out(nodes, worker, cap=self.config.worker_cap)
        for result in results:
            self._commit(result.drafts)
        for result in results:
            if result.payload is None:
                decision = self._boundary_decision(GateId.QG1, result.violations, 0)
                self._commit([self._gate_draft(phase, decision, "phase0_boundary")])
                raise _PhaseFailure(phase, decision)

        analysis = InputAnalysis.from_payload(results[0].payload)
        knowledge = DomainKnowledge.from_payload(results[1].payload)
        return DomainContext(question=question, analysis=analysis, knowledge=knowledge)

    # -- phase 1: concept design -------------------------------------------

    def _capabilities(self, knowledge: DomainKnowledge) -> list[str]:
        kinds = frozenset(knowledge.data.get("content_kinds", []))
        usable = [
            m.value
            for m in MechanicType
            if all(k in kinds for k in self.registry.contract_for(m).content_types)
        ]
        return usable

    def _phase1_concept(
        self, question: str, ctx: DomainContext
    ) -> tuple[GameBlueprint, GateDecision]:
        phase = PhaseId.CONCEPT_DESIGN
        self._current_phase = phase
        budget = self.config.retry_policy.qg1
        self._allowed_steps += 1 + budget
        kinds = frozenset(ctx.knowledge.data.get("content_kinds", []))
        base_payload = {
            "question": question,
            "analysis": ctx.analysis.to_payload(),
            "knowledge": ctx.knowledge.to_payload(),
            "capabilities": self._capabilities(ctx.knowledge),
        }
        payload = dict(base_payload)
        attempts = 1 + budget
        last_decision: Optional[GateDecision] = None
        while attempts > 0:
            attempts -= 1
            output, drafts, input_digest = self._execute_step(phase, "concept_designer", payload)
            self._commit(drafts)
            message = TaggedMessage(
                producing_phase=phase, schema_id="game_concept.v1", payload=output.payload
            )
            violations = enforce_boundary(PhaseId.GAME_PLAN, message)
            if violations:
                self._commit(
                    [self._boundary_reject_draft(phase, "concept_designer", input_digest, violations)]
                )
                last_decision = self._boundary_decision(GateId.QG1, violations, attempts)
                self._commit([self._gate_draft(phase, last_decision, "QG1")])
                if attempts > 0:
                    payload = retry_with_feedback(violations, base_payload)
                    self._commit([self._retry_draft(phase, "concept_designer", payload["retry_directive"])])
                continue

            concept = GameConcept.from_payload(output.payload)
            blueprint = self._build_blueprint(question, ctx, concept)
            decision = qg1_certify(
                blueprint, available_content=kinds, registry=self.registry, retry_remaining=attempts
            )
            self._commit([self._gate_draft(phase, decision, "QG1")])
            if decision.passed:
                return blueprint, decision
            last_decision = decision
            if attempts > 0:
                payload = retry_with_feedback(decision, base_payload)
                self._commit([self._retry_draft(phase, "concept_designer", payload["retry_directive"])])
        assert last_decision is not None
        raise _PhaseFailure(phase, last_decision)

    def _build_blueprint(
        self, question: str, ctx: DomainContext, concept: GameConcept
    ) -> GameBlueprint:
        contract_ids: list[MechanicType] = []
        for scene in concept.scenes:
            for mechanic in scene.mechanics:
                if mechanic.mechanic_type not in contract_ids:
                    contract_ids.append(mechanic.mechanic_type)
        template = contract_ids[0].family if contract_ids else Family.INTERACTIVE_DIAGRAM
        provenance = digest_payload(
            {"question": question, "context": ctx.analysis.to_payload(), "seed": self._seed}
        )
        return GameBlueprint(
            learning_objective=question,
            bloom=ctx.analysis.bloom,
            template=template,
            contract_ids=tuple(contract_ids),
            concept=concept,
            provenance=provenance,
        )

    # -- phase 2: game plan --------------------------------------------------

    def _phase2_plan(
        self, question: str, ctx: DomainContext, blueprint: GameBlueprint
    ) -> tuple[GamePlan, GateDecision]:
        phase = PhaseId.GAME_PLAN
        self._current_phase = phase
        budget = self.config.retry_policy.qg2
        self._allowed_steps += 1 + budget
        blueprint_payload = blueprint.to_payload()
        blueprint_canonical = canonical_json(blueprint_payload)
        base_payload = {
            "question": question,
            "topic_key": ctx.knowledge.topic_key,
            "blueprint": blueprint_payload,
        }
        payload = dict(base_payload)
        attempts = 1 + budget
        last_decision: Optional[GateDecision] = None
        while attempts > 0:
            attempts -= 1
            output, drafts, input_digest = self._execute_step(phase, "game_planner", payload)
            self._commit(drafts)
            message = TaggedMessage(
                producing_phase=phase, schema_id="game_plan.v1", payload=output.payload
            )
            violations = enforce_boundary(PhaseId.SCENE_CONTENT, message)
            if not violations and canonical_json(output.payload.get("blueprint")) != blueprint_canonical:
                violations = [
                    SchemaViolation(
                        path="blueprint",
                        expected="the certified blueprint, unmodified",
                        found="altered blueprint payload",
                    )
                ]
            if violations:
                self._commit(
                    [self._boundary_reject_draft(phase, "game_planner", input_digest, violations)]
                )
                last_decision = self._boundary_decision(GateId.QG2, violations, attempts)
                self._commit([self._gate_draft(phase, last_decision, "QG2")])
                if attempts > 0:
                    payload = retry_with_feedback(violations, base_payload)
                    self._commit([self._retry_draft(phase, "game_planner", payload["retry_directive"])])
                continue

            plan = GamePlan.from_payload(output.payload)
            decision = qg2_validate_plan(plan, registry=self.registry, retry_remaining=attempts)
            self._commit([self._gate_draft(phase, decision, "QG2")])
            if decision.passed:
                return plan, decision
            last_decision = decision
            if attempts > 0:
                payload = retry_with_feedback(decision, base_payload)
                self._commit([self._retry_draft(phase, "game_planner", payload["retry_directive"])])
        assert last_decision is not None
        raise _PhaseFailure(phase, last_decision)

    # -- phase 3: scene content (parallel fan-out + QG3) ----------------------

    def _scene_unit_violations(
        self, scene_payload: dict[str, Any], plan_scene: Any
    ) -> list[SchemaViolation]:
        violations: list[SchemaViolation] = []
        units = scene_payload.get("units")
        if not isinstance(units, list) or not units:
            violations.append(SchemaViolation(path="units", expected="non-empty array", found="missing"))
            return violations
        for i, unit in enumerate(units):
            for violation in validate_message("scene_content.v1", unit):
                violations.append(
                    SchemaViolation(
                        path=f"units[{i}].{violation.path}",
                        expected=violation.expected,
                        found=violation.found,
                    )
                )
            if not isinstance(unit, dict):
                continue
            if unit.get("scene_index") != plan_scene.scene_index:
                violations.append(
                    SchemaViolation(
                        path=f"units[{i}].scene_index",
                        expected=str(plan_scene.scene_index),
                        found=str(unit.get("scene_index")),
                    )
                )
            slot_index = unit.get("slot_index", 0)
            if isinstance(slot_index, int) and slot_index < len(plan_scene.mechanic_slots):
                expected_kind = plan_scene.mechanic_slots[slot_index].mechanic.value
                spec = unit.get("interaction_spec", {})
                if isinstance(spec, dict) and spec.get("kind") != expected_kind:
                    violations.append(
                        SchemaViolation(
                            path=f"units[{i}].interaction_spec.kind",
                            expected=expected_kind,
                            found=str(spec.get("kind")),
                        )
                    )
        if len(units) != len(plan_scene.mechanic_slots):
            violations.append(
                SchemaViolation(
                    path="units",
                    expected=f"{len(plan_scene.mechanic_slots)} content units",
                    found=f"{len(units)} units",
                )
            )
        return violations

    def _phase3_scenes(
        self, question: str, ctx: DomainContext, plan: GamePlan
    ) -> tuple[list[SceneContent], list[GateDecision]]:
        phase = PhaseId.SCENE_CONTENT
        self._current_phase = phase
        policy = self.config.retry_policy
        n_scenes = len(plan.scene_plans)
        self._allowed_steps += n_scenes * (1 + policy.qg3_per_scene)

        def base_payload(plan_scene: Any) -> dict[str, Any]:
            return {
                "question": question,
                "topic_key": ctx.knowledge.topic_key,
                "scene_plan": plan_scene.to_payload(),
                "n_scenes": n_scenes,
                "scene_index": plan_scene.scene_index,
            }

        budgets = {p.scene_index: policy.qg3_per_scene for p in plan.scene_plans}
        pending: dict[int, dict[str, Any]] = {
            p.scene_index: base_payload(p) for p in plan.scene_plans
        }
        plan_by_index = {p.scene_index: p for p in plan.scene_plans}
        accepted: dict[int, list[SceneContent]] = {}
        decisions: dict[int, GateDecision] = {}

        while pending:
            order = sorted(pending)
            items = [(index, pending[index]) for index in order]

            def worker(_: int, item: tuple[int, dict[str, Any]]) -> tuple[int, _WorkerResult]:
                index, payload = item
                output, drafts, input_digest = self._execute_step(
                    phase, "scene_content_generator", payload
                )
                return index, _WorkerResult(
                    payload=output.payload, drafts=drafts, input_digest=input_digest
                )

            results = fan_out(items, worker, cap=self.config.worker_cap)
            next_pending: dict[int, dict[str, Any]] = {}
            exhausted: Optional[GateDecision] = None

            for index, result in results:
                self._commit(result.drafts)
                plan_scene = plan_by_index[index]
                assert result.payload is not None
                units: list[SceneContent] = []
                violations = self._scene_unit_violations(result.payload, plan_scene)
                if violations:
                    self._commit(
                        [
                            self._boundary_reject_draft(
                                phase, "scene_content_generator", result.input_digest, violations
                            )
                        ]
                    )
                    decision = self._boundary_decision(GateId.QG3, violations, budgets[index])
                    decision = GateDecision(
                        gate=decision.gate,
                        verdict=decision.verdict,
                        failure_codes=decision.failure_codes,
                        retry_remaining=decision.retry_remaining,
                        scene_index=index,
                    )
                else:
                    units = [SceneContent.from_payload(u) for u in result.payload["units"]]
                    decision = qg3_validate_scene(
                        units,
                        plan_scene,
                        plan.blueprint,
                        registry=self.registry,
                        retry_remaining=budgets[index],
                    )
                self._commit([self._gate_draft(phase, decision, "QG3")])
                if decision.passed:
                    accepted[index] = units
                    decisions[index] = decision
                elif budgets[index] > 0:
                    budgets[index] -= 1
                    retry_payload = retry_with_feedback(
                        decision if decision.failure_codes else violations,
                        base_payload(plan_scene),
                    )
                    self._commit(
                        [
                            self._retry_draft(
                                phase, "scene_content_generator", retry_payload["retry_directive"]
                            )
                        ]
                    )
                    next_pending[index] = retry_payload
                else:
                    exhausted = decision

            if exhausted is not None:
                raise _PhaseFailure(phase, exhausted)
            pending = next_pending

        ordered_units: list[SceneContent] = []
        for index in sorted(accepted):
            ordered_units.extend(sorted(accepted[index], key=lambda u: u.slot_index))
        return ordered_units, [decisions[i] for i in sorted(decisions)]

    # -- phase 4: assets -------------------------------------------------------

    def _phase4_assets(
        self, question: str, ctx: DomainContext, plan: GamePlan
    ) -> list[AssetSpec]:
        phase = PhaseId.ASSETS
        self._current_phase = phase
        budget = self.config.retry_policy.boundary
        n_assets = len(plan.scene_plans)
        self._allowed_steps += n_assets * (1 + budget)
        family = plan.blueprint.template

        def base_payload(plan_scene: Any, index: int) -> dict[str, Any]:
            return {
                "question": question,
                "topic_key": ctx.knowledge.topic_key,
                "scene_index": plan_scene.scene_index,
                "brief": dict(plan_scene.asset_brief),
                "n_assets": n_assets,
                "asset_index": index,
            }

        def worker(index: int, plan_scene: Any) -> _WorkerResult:
            payload = base_payload(plan_scene, index)
            drafts: list[_Draft] = []
            attempts = 1 + budget
            last_violations: list[SchemaViolation] = []
            last_digest = ""
            while attempts > 0:
                attempts -= 1
                output, step_drafts, input_digest = self._execute_step(
                    phase, "asset_worker", payload, family=family
                )
                drafts.extend(step_drafts)
                message = TaggedMessage(
                    producing_phase=phase, schema_id="asset_spec.v1", payload=output.payload
                )
                violations = enforce_boundary(PhaseId.ASSEMBLY, message)
                if not violations and output.payload.get("scene_index") != plan_scene.scene_index:
                    violations = [
                        SchemaViolation(
                            path="scene_index",
                            expected=str(plan_scene.scene_index),
                            found=str(output.payload.get("scene_index")),
                        )
                    ]
                if not violations:
                    return _WorkerResult(
                        payload=output.payload, drafts=drafts, input_digest=input_digest
                    )
                drafts.append(
                    self._boundary_reject_draft(phase, "asset_worker", input_digest, violations)
                )
                last_violations, last_digest = violations, input_digest
                if attempts > 0:
                    payload = retry_with_feedback(violations, base_payload(plan_scene, index))
                    drafts.append(
                        self._retry_draft(phase, "asset_worker", payload["retry_directive"])
                    )
            return _WorkerResult(
                payload=None, drafts=drafts, violations=last_violations, input_digest=last_digest
            )

        results = fan_out(list(plan.scene_plans), worker, cap=self.config.worker_cap)
        assets: list[AssetSpec] = []
        for result in results:
            self._commit(result.drafts)
        for result in results:
            if result.payload is None:
                decision = self._boundary_decision(GateId.QG4, result.violations, 0)
                self._commit([self._gate_draft(phase, decision, "asset_boundary")])
                raise _PhaseFailure(phase, decision)
            assets.append(AssetSpec.from_payload(result.payload))
        return assets

    # -- phase 5: assembly + QG4 ----------------------------------------------

    def _phase5_assembly(
        self,
        plan: GamePlan,
        contents: list[SceneContent],
        assets: list[AssetSpec],
        chain: list[GateDecision],
    ) -> GameDocument:
        phase = PhaseId.ASSEMBLY
        self._current_phase = phase
        self._commit(
            [
                _Draft(
                    phase=phase,
                    step_name="blueprint_assembler",
                    kind=EventKind.STEP_START,
                    usage=Usage(0, 0),
                    cost_usd=0.0,
                    payload_digest="",
                    generative=False,
                ),
                _Draft(
                    phase=phase,
                    step_name="blueprint_assembler",
                    kind=EventKind.STEP_END,
                    usage=Usage(0, 0),
                    cost_usd=0.0,
                    payload_digest="",
                    generative=False,
                ),
            ]
        )
        candidate = GameDocument(
            plan=plan,
            scene_contents=tuple(contents),
            assets=tuple(assets),
            is_degraded=False,
            validation_certificate=tuple(chain),
        )
        decision = qg4_final(candidate, registry=self.registry, retry_remaining=0)
        self._commit([self._gate_draft(phase, decision, "QG4")])
        if decision.verdict is Verdict.FAIL:
            raise _PhaseFailure(phase, decision)
        document = GameDocument(
            plan=plan,
            scene_contents=tuple(contents),
            assets=tuple(assets),
            is_degraded=decision.verdict is Verdict.DEGRADED_PASS,
            validation_certificate=tuple(chain) + (decision,),
        )
        leftover = validate_message("game_document.v1", document.to_payload())
        if leftover:
            raise RuntimeError(f"assembled document failed schema validation: {leftover[:3]}")
        return document


def run_pipeline(
    question: str,
    context: Optional[dict[str, str]] = None,
    provider: Optional[GenerativeProvider] = None,
    seed: int = 42,
    config: Optional[PipelineConfig] = None,
) -> PipelineResult:
    """Run the full six-phase pipeline for one question."""
    if provider is None:
        from gamesmith.providers.stub import StubProvider

        provider = StubProvider(seed=seed)
    engine = PipelineEngine(provider, config=config)
    return engine.run(question, context=context, seed=seed)
