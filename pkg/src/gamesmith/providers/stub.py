"""Seeded deterministic provider backed by the curated fixture corpus.

Every output is a pure function of (step name, task payload, seed): the
scenario resolved from the question plus the knowledge store fully
determine the synthesized document, and usage/latency come from the
per-mechanic calibration fixtures. An optional content-addressed fixture
directory records outputs for replay-only runs.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from gamesmith.contracts.registry import ContractRegistry, DEFAULT_REGISTRY
from gamesmith.domain.blooms import BloomLevel
from gamesmith.domain.canonical import canonical_json
from gamesmith.domain.mechanics import MechanicType
from gamesmith.providers.base import FixtureGapError, StepOutput, StepSpec, Usage
from gamesmith.providers.faults import FaultInjector
from gamesmith.providers.knowledge import DEFAULT_STORE, KnowledgeStore, Topic
from gamesmith.providers.scenarios import Scenario, scenario_for_question

_CAL = json.loads(
    resources.files("gamesmith.providers").joinpath("data/calibration.json").read_text(encoding="utf-8")
)
MECHANIC_TOKENS: dict[str, int] = _CAL["mechanic_tokens"]
MECHANIC_LATENCY_MS: dict[str, int] = {
    k: int(v * 1000) for k, v in _CAL["mechanic_latency_seconds"].items()
}
CONTEXT_STEP_TOKENS: int = _CAL["context_step_tokens"]
STEP_WEIGHTS: dict[str, float] = _CAL["step_weights"]
PROMPT_FRACTION: float = _CAL["prompt_fraction"]

NOMINAL_TOKENS = 19900
NOMINAL_LATENCY_MS = 29800
CONTEXT_STEP_LATENCY_MS = 2000

_CUE_SENTENCES: dict[BloomLevel, str] = {
    BloomLevel.REMEMBER: "Recall where it belongs among the rest.",
    BloomLevel.UNDERSTAND: "Explain its role in your own words.",
    BloomLevel.APPLY: "Apply the same rule to the next step.",
    BloomLevel.ANALYZE: "Compare it with its neighbors to see the structure.",
    BloomLevel.EVALUATE: "Justify why this choice beats the alternatives.",
    BloomLevel.CREATE: "Design the next piece so the whole still works.",
}

_REGION_HALF = 0.06  # click regions are 0.12-wide boxes centered on anchors


def _split_tokens(total: int) -> Usage:
    prompt = int(total * PROMPT_FRACTION)
    return Usage(prompt_tokens=prompt, completion_tokens=total - prompt)


def _share(total: int, count: int, index: int) -> int:
    base, remainder = divmod(total, max(count, 1))
    return base + (1 if index < remainder else 0)


def _feedback(label: str, description: str, bloom: BloomLevel) -> str:
    return f"Correct — {label}: {description} {_CUE_SENTENCES[bloom]}"


def _element(label: str, description: str, bloom: BloomLevel) -> dict[str, Any]:
    return {
        "label": label,
        "description": description,
        "feedback_text": _feedback(label, description, bloom),
        "bloom_tag": bloom.value,
    }


def build_slot_content(
    topic: Topic, mechanic: MechanicType, bloom: BloomLevel
) -> tuple[list[dict[str, Any]], dict[str, Any], int]:
    """Elements, interaction spec, and op count for one mechanic slot,
    derived entirely from the topic's curated data."""
    raw = topic.raw
    descriptions: dict[str, str] = raw.get("descriptions", {})

    def describe(label: str, fallback: str) -> str:
        return descriptions.get(label, fallback)

    bloom = BloomLevel(bloom)
    if mechanic is MechanicType.DRAG_DROP:
        labels = list(raw["zone_labels"])[:8]
        spec = {"kind": "drag_drop", "placements": [[lbl, lbl] for lbl in labels]}
        elements = [_element(lbl, describe(lbl, f"belongs at the {lbl} zone"), bloom) for lbl in labels]
        return elements, spec, len(labels)

    if mechanic is MechanicType.CLICK_TO_IDENTIFY:
        anchors = raw["diagram_geometry"]["anchors"]
        labels = list(raw["zone_labels"])[:8]
        regions = [
            [lbl, round(anchors[lbl][0] - _REGION_HALF, 4), round(anchors[lbl][1] - _REGION_HALF, 4),
             2 * _REGION_HALF, 2 * _REGION_HALF]
            for lbl in labels
        ]
        spec = {"kind": "click_to_identify", "regions": regions}
        elements = [_element(lbl, describe(lbl, f"found at the {lbl} region"), bloom) for lbl in labels]
        return elements, spec, len(labels)

    if mechanic is MechanicType.TRACE_PATH:
        anchors = raw["diagram_geometry"]["anchors"]
        route = list(raw["path_route"])
        points = [[lbl, anchors[lbl][0], anchors[lbl][1]] for lbl in route]
        spec = {"kind": "trace_path", "points": points}
        elements = [_element(lbl, describe(lbl, f"station {i + 1} on the route"), bloom) for i, lbl in enumerate(route)]
        return elements, spec, len(route)

    if mechanic is MechanicType.DESCRIPTION_MATCHING:
        pairs = []
        elements = []
        for left, relation, right in raw["relations"]:
            pairs.append([left, describe(left, f"paired with {right}"), f"{relation} {right}"])
            elements.append(_element(left, f"{describe(left, 'key term')} — {relation} {right}", bloom))
        spec = {"kind": "description_matching", "pairs": pairs}
        return elements, spec, len(pairs)

    if mechanic is MechanicType.SEQUENCING:
        steps = list(raw["sequence_steps"])
        spec = {"kind": "sequencing", "ordered_items": steps}
        elements = [_element(step, describe(step, f"step {i + 1} of the sequence"), bloom) for i, step in enumerate(steps)]
        return elements, spec, len(steps)

    if mechanic is MechanicType.SORTING:
        categories: dict[str, list[str]] = raw["categories"]
        buckets = list(categories)
        items = [[item, bucket] for bucket in buckets for item in categories[bucket]]
        spec = {"kind": "sorting", "buckets": buckets, "items": items}
        elements = [
            _element(item, describe(item, f"belongs with the {bucket} group"), bloom)
            for item, bucket in items
        ]
        return elements, spec, len(items)

    if mechanic is MechanicType.MEMORY_MATCH:
        pairs = [[term, text] for term, text in list(descriptions.items())[:6]]
        spec = {"kind": "memory_match", "pairs": pairs}
        elements = [_element(term, text, bloom) for term, text in pairs]
        return elements, spec, len(pairs)

    if mechanic is MechanicType.BRANCHING:
        nodes = []
        elements = []
        for node in raw["decision_nodes"]:
            nodes.append(
                {
                    "node_id": node["node_id"],
                    "prompt": node["prompt"],
                    "choices": [dict(choice) for choice in node["choices"]],
                }
            )
            correct = next((c["label"] for c in node["choices"] if c["correct"]), None)
            if correct:
                elements.append(_element(correct, node["prompt"], bloom))
        spec = {"kind": "branching", "nodes": nodes}
        return elements, spec, sum(1 for n in nodes if n["choices"])

    if mechanic is MechanicType.COMPARE_CONTRAST:
        comparison = raw["comparison"]
        statements = [list(s) for s in comparison["statements"]]
        spec = {
            "kind": "compare_contrast",
            "axis_labels": list(comparison["axis_labels"]),
            "statements": statements,
        }
        side_names = {"left": comparison["axis_labels"][0], "right": comparison["axis_labels"][1], "both": "both columns"}
        elements = [
            _element(text, f"belongs under {side_names[side]}", bloom) for text, side in statements
        ]
        return elements, spec, len(statements)

    if mechanic is MechanicType.HIERARCHICAL:
        nodes = [list(n) for n in raw["tree_nodes"]]
        spec = {"kind": "hierarchical", "nodes": nodes}
        elements = [
            _element(label, describe(label, f"attaches under {parent}" if parent else "the root of the tree"), bloom)
            for label, parent in nodes
        ]
        return elements, spec, len(nodes)

    if mechanic is MechanicType.STATE_TRACER:
        trace = raw["code_trace"]
        steps = [list(s) for s in trace["steps"]]
        spec = {"kind": "state_tracer", "code_lines": list(trace["code_lines"]), "steps": steps}
        elements = [
            _element(f"Step {i + 1}", f"after line {line}, {var} becomes {value}", bloom)
            for i, (line, var, value) in enumerate(steps)
        ]
        return elements, spec, len(steps)

    if mechanic is MechanicType.BUG_HUNTER:
        buggy = raw["buggy_code"]
        bugs = [list(b) for b in buggy["bugs"]]
        spec = {"kind": "bug_hunter", "code_lines": list(buggy["code_lines"]), "bugs": bugs}
        elements = [
            _element(f"Line {line}", f"{kind} defect: {fix}", bloom) for line, kind, fix in bugs
        ]
        return elements, spec, len(bugs)

    if mechanic is MechanicType.ALGORITHM_BUILDER:
        steps = list(raw["algorithm_steps"])
        spec = {"kind": "algorithm_builder", "ordered_steps": steps}
        elements = [_element(f"Step {i + 1}", text, bloom) for i, text in enumerate(steps)]
        return elements, spec, len(steps)

    if mechanic is MechanicType.COMPLEXITY_ANALYZER:
        table = raw["complexity_samples"]
        samples = [list(s) for s in table["samples"]]
        spec = {
            "kind": "complexity_analyzer",
            "declared_class": table["declared_class"],
            "samples": samples,
        }
        elements = [
            _element(f"n={n}", f"{steps} steps measured at input size {n}", bloom)
            for n, steps in samples
        ]
        return elements, spec, len(samples)

    if mechanic is MechanicType.CONSTRAINT_PUZZLE:
        puzzle = raw["puzzle"]
        variables = [[name, list(domain)] for name, domain in puzzle["variables"]]
        rules = [
            {"op": r["op"], "var_a": r["var_a"], "var_b": r.get("var_b", ""), "value": r.get("value", "")}
            for r in puzzle["rules"]
        ]
        spec = {"kind": "constraint_puzzle", "variables": variables, "rules": rules}
        elements = [
            _element(name, f"choose one of {', '.join(domain)}", bloom) for name, domain in variables
        ]
        return elements, spec, len(variables)

    raise ValueError(f"no content builder for mechanic {mechanic}")


class StubProvider:
    deterministic = True

    def __init__(
        self,
        seed: int = 42,
        *,
        knowledge: KnowledgeStore = DEFAULT_STORE,
        registry: ContractRegistry = DEFAULT_REGISTRY,
        fault_rate: float = 0.0,
        fault_seed: int = 0,
        script: Optional[dict[str, str]] = None,
        fixture_dir: Optional[Path] = None,
        synthesize: bool = True,
    ):
        self.seed = seed
        self.knowledge = knowledge
        self.registry = registry
        self.injector = FaultInjector(rate=fault_rate, seed=fault_seed)
        self.script = dict(script or {})
        self.fixture_dir = Path(fixture_dir) if fixture_dir else None
        self.synthesize = synthesize

    # -- fixture cache ------------------------------------------------------

    def _fixture_path(self, spec: StepSpec, digest: str) -> Optional[Path]:
        if self.fixture_dir is None:
            return None
        return self.fixture_dir / spec.step_name / f"{digest}-{spec.model_preset.seed}.json"

    def generate(self, spec: StepSpec) -> StepOutput:
        digest = spec.payload_digest()
        fixture_path = self._fixture_path(spec, digest)

        payload: Optional[dict[str, Any]] = None
        if fixture_path is not None and fixture_path.exists():
            payload = json.loads(fixture_path.read_text(encoding="utf-8"))
        elif not self.synthesize:
            raise FixtureGapError(
                f"no fixture for step={spec.step_name} digest={digest} seed={spec.model_preset.seed}"
            )
        else:
            payload = self._synthesize(spec)
            if fixture_path is not None:
                fixture_path.parent.mkdir(parents=True, exist_ok=True)
                fixture_path.write_text(canonical_json(payload), encoding="utf-8")

        scripted = self.script.get(spec.step_name)
        if scripted:
            payload = self.injector.apply_scripted(scripted, spec.step_name, digest, payload)
        else:
            payload = self.injector.maybe_inject(spec.step_name, digest, payload)

        usage, latency = self._account(spec)
        return StepOutput(payload=payload, usage=usage, latency_ms=latency)

    # -- accounting ---------------------------------------------------------

    def _game_budget(self, question: str) -> tuple[int, int]:
        scenario = scenario_for_question(question)
        if scenario is None:
            return NOMINAL_TOKENS, NOMINAL_LATENCY_MS
        mechanic = scenario.primary.value
        return MECHANIC_TOKENS[mechanic], MECHANIC_LATENCY_MS[mechanic]

    def _account(self, spec: StepSpec) -> tuple[Usage, int]:
        step = spec.step_name
        if step in ("input_analyzer", "knowledge_retriever"):
            return _split_tokens(CONTEXT_STEP_TOKENS), CONTEXT_STEP_LATENCY_MS

        question = spec.task_payload.get("question", "")
        total_tokens, total_latency = self._game_budget(question)
        remaining_tokens = total_tokens - 2 * CONTEXT_STEP_TOKENS
        remaining_latency = total_latency - 2 * CONTEXT_STEP_LATENCY_MS

        concept_t = round(STEP_WEIGHTS["concept_designer"] * remaining_tokens)
        plan_t = round(STEP_WEIGHTS["game_planner"] * remaining_tokens)
        scenes_t = round(STEP_WEIGHTS["scene_content_generator"] * remaining_tokens)
        assets_t = remaining_tokens - concept_t - plan_t - scenes_t

        concept_l = round(STEP_WEIGHTS["concept_designer"] * remaining_latency)
        plan_l = round(STEP_WEIGHTS["game_planner"] * remaining_latency)
        scenes_l = round(STEP_WEIGHTS["scene_content_generator"] * remaining_latency)
        assets_l = remaining_latency - concept_l - plan_l - scenes_l

        if step == "concept_designer":
            return _split_tokens(concept_t), concept_l
        if step == "game_planner":
            return _split_tokens(plan_t), plan_l
        if step == "scene_content_generator":
            count = spec.task_payload.get("n_scenes", 1)
            index = spec.task_payload.get("scene_index", 0)
            return _split_tokens(_share(scenes_t, count, index)), _share(scenes_l, count, index)
        if step == "asset_worker":
            count = spec.task_payload.get("n_assets", 1)
            index = spec.task_payload.get("asset_index", 0)
            return _split_tokens(_share(assets_t, count, index)), _share(assets_l, count, index)
        return _split_tokens(0), 0

    # -- synthesis ----------------------------------------------------------

    def _synthesize(self, spec: StepSpec) -> dict[str, Any]:
        step = spec.step_name
        payload = spec.task_payload
        if step == "input_analyzer":
            return self._analyze(payload)
        if step == "knowledge_retriever":
            return self._retrieve(payload)
        if step == "concept_designer":
            return self._design_concept(payload)
        if step == "game_planner":
            return self._plan_game(payload)
        if step == "scene_content_generator":
            return self._generate_scene(payload)
        if step == "asset_worker":
            return self._generate_asset(payload)
        raise FixtureGapError(f"unknown pipeline step {step!r}")

    def _analyze(self, payload: dict[str, Any]) -> dict[str, Any]:
        question = payload.get("question", "")
        context = payload.get("context") or {}
        scenario = scenario_for_question(question)
        topic = self.knowledge.topic(scenario.topic) if scenario else self.knowledge.match(question)

        if scenario:
            subject = topic.subject if topic else "General Studies"
            difficulty = scenario.difficulty.value
            audience = scenario.audience
            bloom = scenario.bloom.value
        else:
            subject = topic.subject if topic else "General Studies"
            difficulty = "intermediate"
            audience = "students"
            bloom = "understand"
            lowered = question.lower()
            for verb, level in (
                ("label", "analyze"),
                ("identify", "remember"),
                ("order", "apply"),
                ("trace", "apply"),
                ("sort", "analyze"),
                ("classify", "analyze"),
                ("judge", "evaluate"),
                ("design", "create"),
                ("build", "create"),
            ):
                if verb in lowered:
                    bloom = level
                    break
        return {
            "subject": context.get("subject") or subject,
            "audience": context.get("audience") or audience,
            "difficulty": context.get("difficulty") or difficulty,
            "bloom": bloom,
        }

    def _retrieve(self, payload: dict[str, Any]) -> dict[str, Any]:
        question = payload.get("question", "")
        scenario = scenario_for_question(question)
        topic = self.knowledge.topic(scenario.topic) if scenario else self.knowledge.match(question)
        if topic is None:
            from gamesmith.domain.context import DomainKnowledge

            return DomainKnowledge.missing().to_payload()
        return topic.knowledge().to_payload()

    def _design_concept(self, payload: dict[str, Any]) -> dict[str, Any]:
        question = payload.get("question", "")
        knowledge = payload.get("knowledge") or {}
        analysis = payload.get("analysis") or {}
        capabilities = [MechanicType(m) for m in payload.get("capabilities", [])]
        scenario = scenario_for_question(question)
        topic_key = knowledge.get("topic_key", "")
        topic = self.knowledge.topic(topic_key) if topic_key else None

        if scenario is not None:
            scene_designs = scenario.scenes
            # the analyzer output reflects any caller-supplied override
            difficulty = analysis.get("difficulty", scenario.difficulty.value)
        else:
            bloom = BloomLevel(analysis.get("bloom", "understand"))
            usable = [
                m
                for m in capabilities
                if topic is not None
                and all(k in topic.content_kinds() for k in self.registry.contract_for(m).content_types)
            ]
            if not usable:
                usable = capabilities or [MechanicType.DRAG_DROP]
            best = max(usable, key=lambda m: self.registry.contract_for(m).selection_weight)
            scene_designs = ((bloom, (best,)),)
            difficulty = analysis.get("difficulty", "intermediate")

        if topic is None:
            # Retrieval missed: emit a minimal concept; QG1 rejects it for
            # data starvation and the run fails loudly rather than inventing.
            return {
                "title": f"Exploration: {question[:40]}",
                "subject": analysis.get("subject", "General Studies"),
                "difficulty": difficulty,
                "narrative_theme": "an improvised study session",
                "all_zone_labels": [],
                "distractor_labels": [],
                "scenes": [
                    {
                        "title": "Scene 1",
                        "learning_goal": question,
                        "zone_labels": [],
                        "needs_diagram": False,
                        "mechanics": [
                            {
                                "mechanic_type": mechs[0].value,
                                "learning_purpose": "exercise the objective",
                                "expected_item_count": 3,
                                "advance_trigger": "all_elements_completed",
                            }
                            for _, mechs in scene_designs[:1]
                        ],
                    }
                ],
                "estimated_duration_minutes": 6,
            }

        raw = topic.raw
        zone_labels = list(raw.get("zone_labels", []))
        scenes = []
        for scene_no, (scene_bloom, mechanics) in enumerate(scene_designs):
            scene_zone_labels: list[str] = []
            needs_diagram = False
            mech_payloads = []
            for mechanic in mechanics:
                contract = self.registry.contract_for(mechanic)
                _, spec_payload, ops = build_slot_content(topic, mechanic, scene_bloom)
                if contract.needs_diagram:
                    needs_diagram = True
                    if mechanic is MechanicType.TRACE_PATH:
                        used = [p[0] for p in spec_payload["points"]]
                    elif mechanic is MechanicType.CLICK_TO_IDENTIFY:
                        used = [r[0] for r in spec_payload["regions"]]
                    else:
                        used = [p[0] for p in spec_payload["placements"]]
                    for label in used:
                        if label not in scene_zone_labels:
                            scene_zone_labels.append(label)
                mech_payloads.append(
                    {
                        "mechanic_type": mechanic.value,
                        "learning_purpose": f"{contract.interaction_primitive} practice toward {scene_bloom.value}",
                        "expected_item_count": ops,
                        "advance_trigger": contract.completion_condition,
                    }
                )
            scenes.append(
                {
                    "title": f"Scene {scene_no + 1}: {topic.title}",
                    "learning_goal": f"Reach the {scene_bloom.value} objective for {topic.title.lower()}",
                    "zone_labels": scene_zone_labels,
                    "needs_diagram": needs_diagram,
                    "mechanics": mech_payloads,
                }
            )

        return {
            "title": topic.title,
            "subject": topic.subject,
            "difficulty": difficulty,
            "narrative_theme": topic.narrative_theme,
            "all_zone_labels": zone_labels,
            "distractor_labels": list(raw.get("distractors", [])),
            "scenes": scenes,
            "estimated_duration_minutes": 4 * len(scenes) + 2,
        }

    def _plan_game(self, payload: dict[str, Any]) -> dict[str, Any]:
        question = payload.get("question", "")
        blueprint = payload["blueprint"]
        scenario = scenario_for_question(question)
        concept = blueprint["concept"]

        scene_plans = []
        for index, scene in enumerate(concept["scenes"]):
            if scenario is not None and index < len(scenario.scenes):
                scene_bloom = scenario.scenes[index][0].value
            else:
                scene_bloom = blueprint["bloom"]
            slots = [
                {"mechanic": m["mechanic_type"], "item_count": m["expected_item_count"]}
                for m in scene["mechanics"]
            ]
            total_items = sum(s["item_count"] for s in slots)
            needs_diagram = any(
                self.registry.contract_for(MechanicType(s["mechanic"])).needs_diagram for s in slots
            )
            brief: dict[str, Any] = {
                "kind": "svg_diagram" if needs_diagram else "text_visual",
            }
            if needs_diagram:
                brief["diagram_labels"] = list(scene["zone_labels"])
            for slot in slots:
                if slot["mechanic"] == "compare_contrast":
                    topic_key = payload.get("topic_key", "")
                    topic = self.knowledge.topic(topic_key) if topic_key else None
                    if topic is not None and topic.raw.get("comparison"):
                        brief["axis_labels"] = list(topic.raw["comparison"]["axis_labels"])
            scene_plans.append(
                {
                    "scene_index": index,
                    "scene_bloom": scene_bloom,
                    "mechanic_slots": slots,
                    "score_contract": {
                        "max_score": 10.0 * total_items,
                        "per_element_points": 10.0,
                        "completion_condition": scene["mechanics"][0]["advance_trigger"],
                    },
                    "asset_brief": brief,
                }
            )
        return {"blueprint": blueprint, "scene_plans": scene_plans}

    def _generate_scene(self, payload: dict[str, Any]) -> dict[str, Any]:
        topic = self.knowledge.topic(payload["topic_key"])
        scene_plan = payload["scene_plan"]
        bloom = BloomLevel(scene_plan["scene_bloom"])
        units = []
        for slot_index, slot in enumerate(scene_plan["mechanic_slots"]):
            mechanic = MechanicType(slot["mechanic"])
            elements, spec, ops = build_slot_content(topic, mechanic, bloom)
            contract = self.registry.contract_for(mechanic)
            units.append(
                {
                    "scene_index": scene_plan["scene_index"],
                    "slot_index": slot_index,
                    "elements": elements,
                    "interaction_spec": spec,
                    "op_count": ops,
                    "hint": f"Hint: start with {elements[0]['label']} and work outward.",
                    "directions": f"Complete every {contract.interaction_primitive} action to finish the scene.",
                }
            )
        return {"scene_index": scene_plan["scene_index"], "units": units}

    def _generate_asset(self, payload: dict[str, Any]) -> dict[str, Any]:
        topic = self.knowledge.topic(payload["topic_key"])
        brief = payload["brief"]
        scene_index = payload["scene_index"]
        if brief.get("kind") == "svg_diagram":
            geometry = topic.raw["diagram_geometry"]
            width, height = geometry["width"], geometry["height"]
            labels = brief.get("diagram_labels", [])
            anchors = [[lbl, geometry["anchors"][lbl][0], geometry["anchors"][lbl][1]] for lbl in labels]
            shapes = "".join(
                f'<circle cx="{x * width:.0f}" cy="{y * height:.0f}" r="28"/>'
                f'<text x="{x * width:.0f}" y="{y * height + 48:.0f}">{lbl}</text>'
                for lbl, x, y in anchors
            )
            svg = f'<svg viewBox="0 0 {width} {height}" role="img" aria-label="{topic.title}">{shapes}</svg>'
            return {
                "kind": "svg_diagram",
                "payload": svg,
                "anchors": anchors,
                "bounding_box": [width, height],
                "scene_index": scene_index,
            }
        lines = [topic.title, topic.narrative_theme]
        axis = brief.get("axis_labels")
        if axis:
            lines.append(" vs ".join(axis))
        return {
            "kind": "text_visual",
            "payload": "\n".join(lines),
            "anchors": [],
            "bounding_box": [800, 600],
            "scene_index": scene_index,
        }
