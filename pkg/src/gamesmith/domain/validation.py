"""Exhaustive schema validation for every inter-phase message type.

Validators collect all violations rather than stopping at the first, so a
retry directive can list every defect at once. Validation is pure and
deterministic: the same payload always yields the same violation list.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Iterable, Optional

from gamesmith.domain.blooms import BloomLevel, bloom_rank
from gamesmith.domain.canonical import canonical_json, load_json
from gamesmith.domain.context import DomainContext, DomainKnowledge, InputAnalysis
from gamesmith.domain.mechanics import Family, MechanicType
from gamesmith.domain.types import (
    AssetKind,
    AssetSpec,
    Difficulty,
    GameBlueprint,
    GameConcept,
    GameDocument,
    GamePlan,
    GateDecision,
    GateId,
    INTERACTION_SPEC_KINDS,
    SceneContent,
    SchemaViolation,
    Verdict,
)

MAX_SCENES = 4
MAX_MECHANICS_PER_SCENE = 3
MAX_ITEM_COUNT = 20
PUZZLE_DOMAIN_CAP = 1_000_000

COMPLEXITY_CLASSES = ("O(1)", "O(log n)", "O(n)", "O(n log n)", "O(n^2)", "O(2^n)")


class UnknownSchemaError(KeyError):
    """Raised for a schema_id that was never registered."""


class SchemaValidationError(ValueError):
    def __init__(self, schema_id: str, violations: list[SchemaViolation]):
        self.schema_id = schema_id
        self.violations = violations
        summary = "; ".join(str(v) for v in violations[:5])
        more = f" (+{len(violations) - 5} more)" if len(violations) > 5 else ""
        super().__init__(f"{schema_id}: {summary}{more}")


class Checker:
    """Accumulates violations while walking a raw payload."""

    def __init__(self) -> None:
        self.violations: list[SchemaViolation] = []

    def add(self, path: str, expected: str, found: Any) -> None:
        self.violations.append(SchemaViolation(path=path, expected=expected, found=_describe(found)))

    def require(self, data: dict[str, Any], path: str, key: str, expected: str) -> Any:
        if not isinstance(data, dict) or key not in data:
            self.add(_join(path, key), expected, "missing")
            return None
        return data[key]

    def str_field(
        self, data: dict[str, Any], path: str, key: str, *, nonempty: bool = True
    ) -> Optional[str]:
        value = self.require(data, path, key, "string")
        if value is None:
            return None
        if not isinstance(value, str):
            self.add(_join(path, key), "string", value)
            return None
        if nonempty and not value.strip():
            self.add(_join(path, key), "non-empty string", value)
            return None
        return value

    def int_field(
        self,
        data: dict[str, Any],
        path: str,
        key: str,
        *,
        minimum: Optional[int] = None,
        maximum: Optional[int] = None,
    ) -> Optional[int]:
        value = self.require(data, path, key, "integer")
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, int):
            self.add(_join(path, key), "integer", value)
            return None
        if minimum is not None and value < minimum:
            self.add(_join(path, key), f"integer >= {minimum}", value)
            return None
        if maximum is not None and value > maximum:
            self.add(_join(path, key), f"integer <= {maximum}", value)
            return None
        return value

    def num_field(
        self,
        data: dict[str, Any],
        path: str,
        key: str,
        *,
        minimum: Optional[float] = None,
        exclusive_minimum: bool = False,
    ) -> Optional[float]:
        value = self.require(data, path, key, "number")
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.add(_join(path, key), "number", value)
            return None
        if minimum is not None:
            if exclusive_minimum and value <= minimum:
                self.add(_join(path, key), f"number > {minimum}", value)
                return None
            if not exclusive_minimum and value < minimum:
                self.add(_join(path, key), f"number >= {minimum}", value)
                return None
        return float(value)

    def bool_field(self, data: dict[str, Any], path: str, key: str) -> Optional[bool]:
        value = self.require(data, path, key, "boolean")
        if value is None:
            return None
        if not isinstance(value, bool):
            self.add(_join(path, key), "boolean", value)
            return None
        return value

    def enum_field(self, data: dict[str, Any], path: str, key: str, enum_cls: type) -> Any:
        allowed = [e.value for e in enum_cls]  # type: ignore[attr-defined]
        value = self.require(data, path, key, f"one of {allowed}")
        if value is None:
            return None
        try:
            return enum_cls(value)
        except ValueError:
            self.add(_join(path, key), f"one of {allowed}", value)
            return None

    def list_field(
        self,
        data: dict[str, Any],
        path: str,
        key: str,
        *,
        min_len: int = 0,
        max_len: Optional[int] = None,
    ) -> Optional[list]:
        value = self.require(data, path, key, "array")
        if value is None:
            return None
        if not isinstance(value, list):
            self.add(_join(path, key), "array", value)
            return None
        if len(value) < min_len:
            self.add(_join(path, key), f"array with >= {min_len} items", f"{len(value)} items")
            return None
        if max_len is not None and len(value) > max_len:
            self.add(_join(path, key), f"array with <= {max_len} items", f"{len(value)} items")
            return None
        return value

    def dict_field(self, data: dict[str, Any], path: str, key: str) -> Optional[dict]:
        value = self.require(data, path, key, "object")
        if value is None:
            return None
        if not isinstance(value, dict):
            self.add(_join(path, key), "object", value)
            return None
        return value

    def str_items(self, values: list, path: str, *, nonempty: bool = True) -> list[str]:
        out = []
        for i, item in enumerate(values):
            if not isinstance(item, str) or (nonempty and not item.strip()):
                self.add(f"{path}[{i}]", "non-empty string", item)
            else:
                out.append(item)
        return out


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _describe(value: Any) -> str:
    if isinstance(value, str):
        return value if len(value) <= 80 else value[:77] + "..."
    if value is None:
        return "null"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, float)):
        return repr(value)
    return type(value).__name__


def _tuple_items(
    ck: Checker, values: list, path: str, shapes: tuple[type, ...], labels: tuple[str, ...]
) -> list:
    """Validate a list of fixed-arity [a, b, ...] rows; returns rows that parsed."""
    rows = []
    for i, row in enumerate(values):
        if not isinstance(row, list) or len(row) != len(shapes):
            ck.add(f"{path}[{i}]", f"array of {len(shapes)} entries ({', '.join(labels)})", row)
            continue
        ok = True
        for j, (item, shape) in enumerate(zip(row, shapes)):
            if shape is float:
                if isinstance(item, bool) or not isinstance(item, (int, float)):
                    ck.add(f"{path}[{i}][{j}]", labels[j], item)
                    ok = False
            elif shape is int:
                if isinstance(item, bool) or not isinstance(item, int):
                    ck.add(f"{path}[{i}][{j}]", labels[j], item)
                    ok = False
            elif not isinstance(item, shape):
                ck.add(f"{path}[{i}][{j}]", labels[j], item)
                ok = False
        if ok:
            rows.append(row)
    return rows


# --------------------------------------------------------------------------
# Per-type validators (each returns the full violation list)
# --------------------------------------------------------------------------


def check_game_concept(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.str_field(data, path, "title")
    ck.str_field(data, path, "subject")
    ck.enum_field(data, path, "difficulty", Difficulty)
    ck.str_field(data, path, "narrative_theme")
    ck.int_field(data, path, "estimated_duration_minutes", minimum=1)

    zones_raw = ck.list_field(data, path, "all_zone_labels")
    zones = set(ck.str_items(zones_raw, _join(path, "all_zone_labels"))) if zones_raw is not None else set()

    distract_raw = ck.list_field(data, path, "distractor_labels")
    if distract_raw is not None:
        distractors = ck.str_items(distract_raw, _join(path, "distractor_labels"))
        overlap = sorted(set(distractors) & zones)
        if overlap:
            ck.add(
                _join(path, "distractor_labels"),
                "labels disjoint from all_zone_labels",
                f"overlap: {', '.join(overlap)}",
            )

    scenes = ck.list_field(data, path, "scenes", min_len=1, max_len=MAX_SCENES)
    if scenes is None:
        return
    for i, scene in enumerate(scenes):
        spath = f"{_join(path, 'scenes')}[{i}]"
        if not isinstance(scene, dict):
            ck.add(spath, "object", scene)
            continue
        ck.str_field(scene, spath, "title")
        ck.str_field(scene, spath, "learning_goal")
        ck.bool_field(scene, spath, "needs_diagram")
        zl = ck.list_field(scene, spath, "zone_labels")
        if zl is not None:
            for j, label in enumerate(ck.str_items(zl, _join(spath, "zone_labels"))):
                if label not in zones:
                    ck.add(
                        f"{_join(spath, 'zone_labels')}[{j}]",
                        "label present in all_zone_labels",
                        label,
                    )
        mechanics = ck.list_field(scene, spath, "mechanics", min_len=1, max_len=MAX_MECHANICS_PER_SCENE)
        if mechanics is None:
            continue
        for j, mech in enumerate(mechanics):
            mpath = f"{_join(spath, 'mechanics')}[{j}]"
            if not isinstance(mech, dict):
                ck.add(mpath, "object", mech)
                continue
            ck.enum_field(mech, mpath, "mechanic_type", MechanicType)
            ck.str_field(mech, mpath, "learning_purpose")
            ck.int_field(mech, mpath, "expected_item_count", minimum=1, maximum=MAX_ITEM_COUNT)
            ck.str_field(mech, mpath, "advance_trigger")


def check_game_blueprint(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.str_field(data, path, "learning_objective")
    ck.enum_field(data, path, "bloom", BloomLevel)
    template = ck.enum_field(data, path, "template", Family)
    ck.str_field(data, path, "provenance")

    ids = ck.list_field(data, path, "contract_ids", min_len=1)
    if ids is not None:
        for i, raw in enumerate(ids):
            ipath = f"{_join(path, 'contract_ids')}[{i}]"
            try:
                mech = MechanicType(raw)
            except (ValueError, TypeError):
                ck.add(ipath, f"one of {[m.value for m in MechanicType]}", raw)
                continue
            if template is not None and mech.family is not template:
                ck.add(ipath, f"mechanic of family {template.value}", mech.value)

    concept = data.get("concept")
    check_game_concept(concept, ck, _join(path, "concept"))


def check_score_contract(data: Any, ck: Checker, path: str) -> None:
    if not isinstance(data, dict):
        ck.add(path, "object", data)
        return
    ck.num_field(data, path, "max_score", minimum=0, exclusive_minimum=True)
    ck.num_field(data, path, "per_element_points", minimum=0, exclusive_minimum=True)
    ck.str_field(data, path, "completion_condition")


def check_game_plan(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    check_game_blueprint(data.get("blueprint"), ck, _join(path, "blueprint"))

    plans = ck.list_field(data, path, "scene_plans", min_len=1, max_len=MAX_SCENES)
    if plans is None:
        return
    prev_rank: Optional[int] = None
    for i, plan in enumerate(plans):
        ppath = f"{_join(path, 'scene_plans')}[{i}]"
        if not isinstance(plan, dict):
            ck.add(ppath, "object", plan)
            continue
        index = ck.int_field(plan, ppath, "scene_index", minimum=0)
        if index is not None and index != i:
            ck.add(_join(ppath, "scene_index"), f"sequential index {i}", index)
        bloom = ck.enum_field(plan, ppath, "scene_bloom", BloomLevel)
        if bloom is not None:
            rank = bloom_rank(bloom)
            if prev_rank is not None and rank < prev_rank:
                ck.add(
                    _join(ppath, "scene_bloom"),
                    "rank >= preceding scene (non-decreasing sequence)",
                    bloom.value,
                )
            prev_rank = rank

        total_items = 0
        slots = ck.list_field(plan, ppath, "mechanic_slots", min_len=1, max_len=MAX_MECHANICS_PER_SCENE)
        if slots is not None:
            for j, slot in enumerate(slots):
                spath = f"{_join(ppath, 'mechanic_slots')}[{j}]"
                if not isinstance(slot, dict):
                    ck.add(spath, "object", slot)
                    continue
                ck.enum_field(slot, spath, "mechanic", MechanicType)
                count = ck.int_field(slot, spath, "item_count", minimum=1, maximum=MAX_ITEM_COUNT)
                total_items += count or 0

        contract = plan.get("score_contract")
        cpath = _join(ppath, "score_contract")
        check_score_contract(contract, ck, cpath)
        if isinstance(contract, dict) and slots is not None:
            points = contract.get("per_element_points")
            max_score = contract.get("max_score")
            if (
                isinstance(points, (int, float))
                and isinstance(max_score, (int, float))
                and not isinstance(points, bool)
                and not isinstance(max_score, bool)
                and total_items > 0
                and abs(points * total_items - max_score) > 1e-9
            ):
                ck.add(
                    _join(cpath, "max_score"),
                    f"per_element_points * element count = {points * total_items}",
                    max_score,
                )
        brief = plan.get("asset_brief")
        if brief is not None and not isinstance(brief, dict):
            ck.add(_join(ppath, "asset_brief"), "object", brief)


def _check_interaction_spec(data: Any, ck: Checker, path: str) -> None:
    if not isinstance(data, dict):
        ck.add(path, "object", data)
        return
    kind = data.get("kind")
    if kind not in INTERACTION_SPEC_KINDS:
        ck.add(_join(path, "kind"), f"one of {sorted(INTERACTION_SPEC_KINDS)}", kind)
        return

    if kind == "drag_drop":
        rows = ck.list_field(data, path, "placements")
        if rows is not None:
            _tuple_items(ck, rows, _join(path, "placements"), (str, str), ("label", "zone"))
    elif kind == "click_to_identify":
        rows = ck.list_field(data, path, "regions")
        if rows is not None:
            _tuple_items(
                ck,
                rows,
                _join(path, "regions"),
                (str, float, float, float, float),
                ("label", "x", "y", "width", "height"),
            )
    elif kind == "trace_path":
        rows = ck.list_field(data, path, "points")
        if rows is not None:
            _tuple_items(ck, rows, _join(path, "points"), (str, float, float), ("label", "x", "y"))
    elif kind == "description_matching":
        rows = ck.list_field(data, path, "pairs")
        if rows is not None:
            for i, row in enumerate(rows):
                if not isinstance(row, list) or len(row) != 3 or not all(isinstance(x, str) for x in row):
                    ck.add(f"{_join(path, 'pairs')}[{i}]", "array [term, description, relation]", row)
    elif kind == "sequencing":
        rows = ck.list_field(data, path, "ordered_items")
        if rows is not None:
            ck.str_items(rows, _join(path, "ordered_items"))
    elif kind == "sorting":
        buckets_raw = ck.list_field(data, path, "buckets", min_len=1)
        buckets = set(ck.str_items(buckets_raw, _join(path, "buckets"))) if buckets_raw is not None else set()
        rows = ck.list_field(data, path, "items")
        if rows is not None:
            for i, row in enumerate(_tuple_items(ck, rows, _join(path, "items"), (str, str), ("label", "bucket"))):
                if buckets and row[1] not in buckets:
                    ck.add(f"{_join(path, 'items')}[{i}][1]", f"bucket in {sorted(buckets)}", row[1])
    elif kind == "memory_match":
        rows = ck.list_field(data, path, "pairs")
        if rows is not None:
            _tuple_items(ck, rows, _join(path, "pairs"), (str, str), ("term", "match"))
    elif kind == "branching":
        nodes = ck.list_field(data, path, "nodes", min_len=1)
        if nodes is None:
            return
        node_ids = set()
        for node in nodes:
            if isinstance(node, dict) and isinstance(node.get("node_id"), str):
                node_ids.add(node["node_id"])
        for i, node in enumerate(nodes):
            npath = f"{_join(path, 'nodes')}[{i}]"
            if not isinstance(node, dict):
                ck.add(npath, "object", node)
                continue
            ck.str_field(node, npath, "node_id")
            ck.str_field(node, npath, "prompt")
            choices = ck.list_field(node, npath, "choices")
            if choices is None:
                continue
            any_correct = not choices
            for j, choice in enumerate(choices):
                chpath = f"{_join(npath, 'choices')}[{j}]"
                if not isinstance(choice, dict):
                    ck.add(chpath, "object", choice)
                    continue
                ck.str_field(choice, chpath, "label")
                nxt = ck.str_field(choice, chpath, "next_node")
                if nxt is not None and nxt != "end" and nxt not in node_ids:
                    ck.add(_join(chpath, "next_node"), "existing node_id or 'end'", nxt)
                if choice.get("correct") is True:
                    any_correct = True
                elif not isinstance(choice.get("correct"), bool):
                    ck.add(_join(chpath, "correct"), "boolean", choice.get("correct"))
            if not any_correct:
                ck.add(_join(npath, "choices"), "at least one correct choice", "none marked correct")
    elif kind == "compare_contrast":
        axes = ck.list_field(data, path, "axis_labels", min_len=2, max_len=2)
        if axes is not None:
            ck.str_items(axes, _join(path, "axis_labels"))
        rows = ck.list_field(data, path, "statements")
        if rows is not None:
            for i, row in enumerate(_tuple_items(ck, rows, _join(path, "statements"), (str, str), ("statement", "side"))):
                if row[1] not in ("left", "right", "both"):
                    ck.add(f"{_join(path, 'statements')}[{i}][1]", "one of ['left', 'right', 'both']", row[1])
    elif kind == "hierarchical":
        rows = ck.list_field(data, path, "nodes", min_len=1)
        if rows is None:
            return
        parsed = _tuple_items(ck, rows, _join(path, "nodes"), (str, str), ("label", "parent"))
        labels = [row[0] for row in parsed]
        if len(set(labels)) != len(labels):
            ck.add(_join(path, "nodes"), "unique node labels", "duplicates present")
        label_set = set(labels)
        for i, row in enumerate(parsed):
            if row[1] and row[1] not in label_set:
                ck.add(f"{_join(path, 'nodes')}[{i}][1]", "existing parent label or ''", row[1])
        if parsed and not any(row[1] == "" for row in parsed):
            ck.add(_join(path, "nodes"), "at least one root node", "every node has a parent")
    elif kind in ("state_tracer", "bug_hunter"):
        lines = ck.list_field(data, path, "code_lines", min_len=1)
        n_lines = len(lines) if lines is not None else 0
        rows_key = "steps" if kind == "state_tracer" else "bugs"
        rows = ck.list_field(data, path, rows_key)
        if rows is not None:
            labels = ("line", "variable", "value") if kind == "state_tracer" else ("line", "defect", "fix")
            for i, row in enumerate(_tuple_items(ck, rows, _join(path, rows_key), (int, str, str), labels)):
                if n_lines and not (1 <= row[0] <= n_lines):
                    ck.add(f"{_join(path, rows_key)}[{i}][0]", f"line number in 1..{n_lines}", row[0])
    elif kind == "algorithm_builder":
        rows = ck.list_field(data, path, "ordered_steps", min_len=1)
        if rows is not None:
            ck.str_items(rows, _join(path, "ordered_steps"))
    elif kind == "complexity_analyzer":
        declared = ck.str_field(data, path, "declared_class")
        if declared is not None and declared not in COMPLEXITY_CLASSES:
            ck.add(_join(path, "declared_class"), f"one of {list(COMPLEXITY_CLASSES)}", declared)
        rows = ck.list_field(data, path, "samples", min_len=3)
        if rows is not None:
            parsed = _tuple_items(ck, rows, _join(path, "samples"), (int, int), ("input size", "steps"))
            for i in range(1, len(parsed)):
                if parsed[i][0] != parsed[i - 1][0] * 2:
                    ck.add(
                        f"{_join(path, 'samples')}[{i}][0]",
                        f"input size doubling previous ({parsed[i - 1][0] * 2})",
                        parsed[i][0],
                    )
            for i, row in enumerate(parsed):
                if row[0] <= 0:
                    ck.add(f"{_join(path, 'samples')}[{i}][0]", "positive input size", row[0])
                if row[1] < 0:
                    ck.add(f"{_join(path, 'samples')}[{i}][1]", "non-negative step count", row[1])
    elif kind == "constraint_puzzle":
        variables = ck.list_field(data, path, "variables", min_len=1)
        domains: dict[str, list[str]] = {}
        if variables is not None:
            size = 1
            for i, var in enumerate(variables):
                vpath = f"{_join(path, 'variables')}[{i}]"
                if (
                    not isinstance(var, list)
                    or len(var) != 2
                    or not isinstance(var[0], str)
                    or not isinstance(var[1], list)
                ):
                    ck.add(vpath, "array [name, domain values]", var)
                    continue
                name, domain = var
                values = ck.str_items(domain, f"{vpath}[1]")
                if not values:
                    ck.add(f"{vpath}[1]", "non-empty domain", domain)
                    continue
                if len(set(values)) != len(values):
                    ck.add(f"{vpath}[1]", "unique domain values", "duplicates present")
                if name in domains:
                    ck.add(f"{vpath}[0]", "unique variable name", name)
                domains[name] = values
                size *= len(values)
            if size > PUZZLE_DOMAIN_CAP:
                ck.add(
                    _join(path, "variables"),
                    f"assignment space <= {PUZZLE_DOMAIN_CAP}",
                    f"{size} assignments",
                )
        rules = ck.list_field(data, path, "rules")
        if rules is not None:
            for i, rule in enumerate(rules):
                rpath = f"{_join(path, 'rules')}[{i}]"
                if not isinstance(rule, dict):
                    ck.add(rpath, "object", rule)
                    continue
                op = rule.get("op")
                if op not in ("eq", "ne", "same", "diff", "before"):
                    ck.add(_join(rpath, "op"), "one of ['eq', 'ne', 'same', 'diff', 'before']", op)
                    continue
                var_a = rule.get("var_a")
                if not isinstance(var_a, str) or (domains and var_a not in domains):
                    ck.add(_join(rpath, "var_a"), "declared variable name", var_a)
                    continue
                if op in ("eq", "ne"):
                    value = rule.get("value")
                    if not isinstance(value, str) or value not in domains.get(var_a, []):
                        ck.add(_join(rpath, "value"), f"value in domain of {var_a}", value)
                else:
                    var_b = rule.get("var_b")
                    if not isinstance(var_b, str) or (domains and var_b not in domains):
                        ck.add(_join(rpath, "var_b"), "declared variable name", var_b)


def check_scene_content(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.int_field(data, path, "scene_index", minimum=0)
    if "slot_index" in data:
        ck.int_field(data, path, "slot_index", minimum=0)
    elements = ck.list_field(data, path, "elements", min_len=1)
    if elements is not None:
        for i, element in enumerate(elements):
            epath = f"{_join(path, 'elements')}[{i}]"
            if not isinstance(element, dict):
                ck.add(epath, "object", element)
                continue
            ck.str_field(element, epath, "label")
            ck.str_field(element, epath, "description", nonempty=False)
            ck.str_field(element, epath, "feedback_text")
            ck.enum_field(element, epath, "bloom_tag", BloomLevel)

    spec_data = data.get("interaction_spec")
    _check_interaction_spec(spec_data, ck, _join(path, "interaction_spec"))

    declared = ck.int_field(data, path, "op_count", minimum=0)
    if declared is not None and isinstance(spec_data, dict) and spec_data.get("kind") in INTERACTION_SPEC_KINDS:
        spec_violations = Checker()
        _check_interaction_spec(spec_data, spec_violations, "interaction_spec")
        if not spec_violations.violations:
            from gamesmith.domain.types import interaction_spec_from_payload

            derived = interaction_spec_from_payload(spec_data).op_count()
            if derived != declared:
                ck.add(
                    _join(path, "op_count"),
                    f"count of scoreable operations in interaction_spec ({derived})",
                    declared,
                )
    for key in ("hint", "directions"):
        if key in data and not isinstance(data[key], str):
            ck.add(_join(path, key), "string", data[key])


def check_asset_spec(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.enum_field(data, path, "kind", AssetKind)
    ck.str_field(data, path, "payload")
    ck.int_field(data, path, "scene_index", minimum=0)
    anchors = ck.list_field(data, path, "anchors")
    if anchors is not None:
        parsed = _tuple_items(ck, anchors, _join(path, "anchors"), (str, float, float), ("label", "x", "y"))
        for i, row in enumerate(parsed):
            for j in (1, 2):
                if not (0.0 <= row[j] <= 1.0):
                    ck.add(f"{_join(path, 'anchors')}[{i}][{j}]", "fraction within [0, 1]", row[j])
    box = ck.list_field(data, path, "bounding_box", min_len=2, max_len=2)
    if box is not None:
        for j, side in enumerate(box):
            if isinstance(side, bool) or not isinstance(side, (int, float)) or side <= 0:
                ck.add(f"{_join(path, 'bounding_box')}[{j}]", "positive number", side)


def check_gate_decision(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    gate = ck.enum_field(data, path, "gate", GateId)
    verdict = ck.enum_field(data, path, "verdict", Verdict)
    ck.int_field(data, path, "retry_remaining", minimum=0)
    failures = ck.list_field(data, path, "failure_codes")
    if failures is not None:
        from gamesmith.domain.types import FailureCode

        for i, failure in enumerate(failures):
            fpath = f"{_join(path, 'failure_codes')}[{i}]"
            if not isinstance(failure, dict):
                ck.add(fpath, "object", failure)
                continue
            ck.enum_field(failure, fpath, "code", FailureCode)
            ck.enum_field(failure, fpath, "gate", GateId)
            ck.str_field(failure, fpath, "detail", nonempty=False)
        if verdict is Verdict.PASS and failures:
            ck.add(_join(path, "failure_codes"), "empty list when verdict is pass", f"{len(failures)} failures")
    if verdict is Verdict.DEGRADED_PASS and gate is not None and gate is not GateId.QG4:
        ck.add(_join(path, "verdict"), "degraded_pass only at QG4", f"{verdict.value} at {gate.value}")


def check_game_document(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    check_game_plan(data.get("plan"), ck, _join(path, "plan"))
    ck.bool_field(data, path, "is_degraded")

    contents = ck.list_field(data, path, "scene_contents", min_len=1)
    if contents is not None:
        for i, scene in enumerate(contents):
            check_scene_content(scene, ck, f"{_join(path, 'scene_contents')}[{i}]")
        plan = data.get("plan")
        if isinstance(plan, dict) and isinstance(plan.get("scene_plans"), list):
            expected = 0
            countable = True
            for scene_plan in plan["scene_plans"]:
                slots = scene_plan.get("mechanic_slots") if isinstance(scene_plan, dict) else None
                if not isinstance(slots, list):
                    countable = False
                    break
                expected += len(slots)
            if countable and len(contents) != expected:
                ck.add(
                    _join(path, "scene_contents"),
                    f"one content unit per planned mechanic slot ({expected})",
                    f"{len(contents)} units",
                )
    assets = ck.list_field(data, path, "assets")
    if assets is not None:
        for i, asset in enumerate(assets):
            check_asset_spec(asset, ck, f"{_join(path, 'assets')}[{i}]")
    certificate = ck.list_field(data, path, "validation_certificate")
    if certificate is not None:
        for i, decision in enumerate(certificate):
            check_gate_decision(decision, ck, f"{_join(path, 'validation_certificate')}[{i}]")


def check_input_analysis(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.str_field(data, path, "subject")
    ck.str_field(data, path, "audience")
    ck.enum_field(data, path, "difficulty", Difficulty)
    ck.enum_field(data, path, "bloom", BloomLevel)


def check_domain_knowledge(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.str_field(data, path, "topic_key", nonempty=False)
    labels = ck.list_field(data, path, "labels")
    if labels is not None:
        ck.str_items(labels, _join(path, "labels"))
    distractors = ck.list_field(data, path, "distractors")
    if distractors is not None:
        ck.str_items(distractors, _join(path, "distractors"))
    descriptions = ck.dict_field(data, path, "descriptions")
    if descriptions is not None:
        for key, value in descriptions.items():
            if not isinstance(value, str):
                ck.add(f"{_join(path, 'descriptions')}.{key}", "string", value)
    has_labels = ck.bool_field(data, path, "has_labels")
    ck.bool_field(data, path, "has_sequence")
    ck.bool_field(data, path, "has_code")
    empty = ck.bool_field(data, path, "empty")
    if has_labels and labels is not None and not labels:
        ck.add(_join(path, "labels"), "non-empty labels when has_labels is true", "empty list")
    if empty and labels:
        ck.add(_join(path, "empty"), "false when labels are present", "true")


def check_domain_context(data: Any, ck: Checker, path: str = "") -> None:
    if not isinstance(data, dict):
        ck.add(path or "$", "object", data)
        return
    ck.str_field(data, path, "question")
    check_input_analysis(data.get("analysis"), ck, _join(path, "analysis"))
    check_domain_knowledge(data.get("knowledge"), ck, _join(path, "knowledge"))


# --------------------------------------------------------------------------
# Registry
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SchemaEntry:
    validator: Callable[[Any, Checker, str], None]
    constructor: Callable[[dict[str, Any]], Any]


_REGISTRY: dict[str, SchemaEntry] = {}


def register_schema(
    schema_id: str,
    validator: Callable[[Any, Checker, str], None],
    constructor: Callable[[dict[str, Any]], Any],
) -> None:
    _REGISTRY[schema_id] = SchemaEntry(validator=validator, constructor=constructor)


register_schema("game_concept.v1", check_game_concept, GameConcept.from_payload)
register_schema("game_blueprint.v1", check_game_blueprint, GameBlueprint.from_payload)
register_schema("game_plan.v1", check_game_plan, GamePlan.from_payload)
register_schema("scene_content.v1", check_scene_content, SceneContent.from_payload)
register_schema("asset_spec.v1", check_asset_spec, AssetSpec.from_payload)
register_schema("gate_decision.v1", check_gate_decision, GateDecision.from_payload)
register_schema("game_document.v1", check_game_document, GameDocument.from_payload)
register_schema("input_analysis.v1", check_input_analysis, InputAnalysis.from_payload)
register_schema("domain_knowledge.v1", check_domain_knowledge, DomainKnowledge.from_payload)
register_schema("domain_context.v1", check_domain_context, DomainContext.from_payload)


def registered_schemas() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


def validate_message(schema_id: str, payload: Any) -> list[SchemaViolation]:
    """All violations of the named schema, or [] when the payload satisfies it."""
    try:
        entry = _REGISTRY[schema_id]
    except KeyError:
        raise UnknownSchemaError(f"unknown schema_id: {schema_id!r}") from None
    ck = Checker()
    entry.validator(payload, ck, "")
    return ck.violations


def serialize_document(doc: Any) -> str:
    """Canonical text form of any domain value exposing to_payload()."""
    return canonical_json(doc.to_payload())


def parse_document(text: str, schema_id: str) -> Any:
    """Parse canonical text into a typed value; raises with all violations on bad input."""
    if schema_id not in _REGISTRY:
        raise UnknownSchemaError(f"unknown schema_id: {schema_id!r}")
    try:
        payload = load_json(text)
    except ValueError as exc:
        raise SchemaValidationError(
            schema_id, [SchemaViolation(path="$", expected="valid JSON document", found=str(exc))]
        ) from None
    violations = validate_message(schema_id, payload)
    if violations:
        raise SchemaValidationError(schema_id, violations)
    return _REGISTRY[schema_id].constructor(payload)
