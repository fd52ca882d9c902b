"""Constraint-table fidelity, contract consistency, and template routing."""

from __future__ import annotations

import itertools

import pytest

from gamesmith.contracts import (
    Complexity,
    ContentFlags,
    DEFAULT_REGISTRY,
    UnresolvableRequest,
    contract_for,
    mechanics_for_bloom,
    resolve_template,
    validate_composition,
)
from gamesmith.contracts.composition import CompositionKind, SceneSelection, TemplateSelection
from gamesmith.domain import BloomLevel, FailureCode, Family, MechanicType

M = MechanicType
B = BloomLevel

# The six constraint-table rows, frozen.
EXPECTED_TABLE = {
    B.REMEMBER: {M.CLICK_TO_IDENTIFY, M.MEMORY_MATCH},
    B.UNDERSTAND: {M.DRAG_DROP, M.DESCRIPTION_MATCHING},
    B.APPLY: {M.TRACE_PATH, M.SEQUENCING, M.STATE_TRACER},
    B.ANALYZE: {M.SORTING, M.HIERARCHICAL, M.BUG_HUNTER, M.COMPLEXITY_ANALYZER},
    B.EVALUATE: {M.COMPARE_CONTRAST, M.BRANCHING},
    B.CREATE: {M.ALGORITHM_BUILDER, M.CONSTRAINT_PUZZLE},
}


class TestConstraintTable:
    @pytest.mark.parametrize("level", list(B))
    def test_each_row_exact(self, level):
        assert mechanics_for_bloom(level) == EXPECTED_TABLE[level]

    def test_rows_partition_all_fifteen_mechanics(self):
        rows = [mechanics_for_bloom(level) for level in B]
        union = set().union(*rows)
        assert union == set(M)
        assert len(union) == 15
        for a, b in itertools.combinations(rows, 2):
            assert not (a & b), "rows must be pairwise disjoint"


class TestContracts:
    def test_total_over_all_mechanics(self):
        for mechanic in M:
            contract = contract_for(mechanic)
            assert contract.mechanic is mechanic

    def test_drag_drop_range_contains_understand(self):
        low, high = contract_for(M.DRAG_DROP).bloom_range
        assert low.rank <= B.UNDERSTAND.rank <= high.rank

    def test_sequencing_and_memory_match_need_no_diagram(self):
        assert contract_for(M.SEQUENCING).needs_diagram is False
        assert contract_for(M.MEMORY_MATCH).needs_diagram is False

    def test_every_contract_covers_its_table_rows(self):
        # consistency: m in row(l) implies l in bloom_range(contract(m))
        for level in B:
            for mechanic in mechanics_for_bloom(level):
                assert contract_for(mechanic).allows_bloom(level), (mechanic, level)

    def test_threshold_default_rule(self):
        contract = contract_for(M.DESCRIPTION_MATCHING)
        assert contract.threshold_for(0) == 3
        assert contract.threshold_for(2) == 3
        assert contract.threshold_for(4) == 4

    def test_family_split_is_ten_five(self):
        families = [m.family for m in M]
        assert families.count(Family.INTERACTIVE_DIAGRAM) == 10
        assert families.count(Family.INTERACTIVE_ALGORITHM) == 5


ALL_FLAG_COMBOS = [
    ContentFlags(has_labels=a, has_sequence=b, has_code=c)
    for a, b, c in itertools.product([False, True], repeat=3)
    if a or b or c
]


class TestResolveTemplate:
    def test_analyze_with_labels_low_complexity(self):
        selection = resolve_template(B.ANALYZE, ContentFlags(True, False, False), Complexity.LOW)
        assert selection.composition_kind is CompositionKind.SINGLE_SINGLE
        assert len(selection.scenes) == 1
        assert selection.scenes[0].mechanics[0] in EXPECTED_TABLE[B.ANALYZE]

    def test_remember_with_labels_low_complexity(self):
        selection = resolve_template(B.REMEMBER, ContentFlags(True, False, False), Complexity.LOW)
        assert selection.scenes[0].mechanics[0] in {M.CLICK_TO_IDENTIFY, M.MEMORY_MATCH}

    def test_all_false_flags_precondition(self):
        with pytest.raises(ValueError):
            resolve_template(B.APPLY, ContentFlags(False, False, False), Complexity.LOW)

    def test_unresolvable_when_no_row_mechanic_has_data(self):
        # create-row mechanics all need code
        with pytest.raises(UnresolvableRequest):
            resolve_template(B.CREATE, ContentFlags(True, True, False), Complexity.LOW)

    @pytest.mark.parametrize("level", list(B))
    @pytest.mark.parametrize("complexity", list(Complexity))
    def test_exhaustive_sweep_postconditions(self, level, complexity):
        # brute-force sweep: every resolvable combination satisfies the
        # composition bounds and row membership at each scene's level
        for flags in ALL_FLAG_COMBOS:
            try:
                selection = resolve_template(level, flags, complexity)
            except UnresolvableRequest:
                continue
            assert validate_composition(selection) == []
            assert 1 <= len(selection.scenes) <= 4
            for scene in selection.scenes:
                assert 1 <= len(scene.mechanics) <= 3
                for mechanic in scene.mechanics:
                    assert mechanic in mechanics_for_bloom(scene.bloom)
                    assert mechanic.family is selection.template
            ranks = [scene.bloom.rank for scene in selection.scenes]
            assert ranks == sorted(ranks)
            assert selection.scenes[-1].bloom is level

    def test_sweep_is_deterministic(self):
        for flags in ALL_FLAG_COMBOS:
            for level in B:
                for complexity in Complexity:
                    try:
                        first = resolve_template(level, flags, complexity)
                        second = resolve_template(level, flags, complexity)
                    except UnresolvableRequest:
                        continue
                    assert first == second


def _selection(scene_specs):
    return TemplateSelection(
        template=Family.INTERACTIVE_DIAGRAM,
        scenes=tuple(SceneSelection(bloom=b, mechanics=tuple(ms)) for b, ms in scene_specs),
        composition_kind=CompositionKind.MULTI_MULTI,
    )


class TestValidateComposition:
    def test_five_scenes_exceed_bound(self):
        selection = _selection([(B.ANALYZE, [M.SORTING])] * 5)
        assert FailureCode.SCENE_COUNT_EXCEEDED in validate_composition(selection)

    def test_sorted_ranks_pass(self):
        assert validate_composition(
            _selection([(B.APPLY, [M.TRACE_PATH]), (B.ANALYZE, [M.SORTING]), (B.EVALUATE, [M.BRANCHING])])
        ) == []

    def test_rank_decrease_flagged(self):
        # oracle: explicit rank comparison
        blooms = [B.ANALYZE, B.APPLY]
        assert any(blooms[i].rank > blooms[i + 1].rank for i in range(len(blooms) - 1))
        codes = validate_composition(
            _selection([(B.ANALYZE, [M.SORTING]), (B.APPLY, [M.TRACE_PATH])])
        )
        assert codes == [FailureCode.BLOOM_NOT_MONOTONE]

    def test_plan_blooms_argument_overrides_scene_levels(self):
        selection = _selection([(B.APPLY, [M.TRACE_PATH]), (B.APPLY, [M.SEQUENCING])])
        assert validate_composition(selection, [B.ANALYZE, B.APPLY]) == [FailureCode.BLOOM_NOT_MONOTONE]

    def test_mixed_family_scene_flagged(self):
        selection = TemplateSelection(
            template=Family.INTERACTIVE_DIAGRAM,
            scenes=(SceneSelection(bloom=B.APPLY, mechanics=(M.TRACE_PATH, M.STATE_TRACER)),),
            composition_kind=CompositionKind.SINGLE_MULTI,
        )
        assert FailureCode.MECHANIC_INCOMPAT in validate_composition(selection)

    def test_four_mechanics_in_one_scene_flagged(self):
        selection = TemplateSelection(
            template=Family.INTERACTIVE_DIAGRAM,
            scenes=(
                SceneSelection(
                    bloom=B.ANALYZE,
                    mechanics=(M.SORTING, M.HIERARCHICAL, M.DRAG_DROP, M.DESCRIPTION_MATCHING),
                ),
            ),
            composition_kind=CompositionKind.SINGLE_MULTI,
        )
        assert FailureCode.MECHANIC_COUNT_EXCEEDED in validate_composition(selection)


def test_registry_loads_from_declarative_file(tmp_path):
    import json
    from importlib import resources

    from gamesmith.contracts import ContractRegistry

    raw = resources.files("gamesmith.contracts").joinpath("data/mechanic_contracts.json").read_text()
    config_path = tmp_path / "contracts.json"
    config_path.write_text(raw, encoding="utf-8")
    registry = ContractRegistry.from_file(config_path)
    for mechanic in M:
        assert registry.contract_for(mechanic) == DEFAULT_REGISTRY.contract_for(mechanic)


def test_registry_rejects_diagram_demand_on_content_only_mechanics():
    import json
    from importlib import resources

    from gamesmith.contracts import ContractRegistry

    raw = json.loads(
        resources.files("gamesmith.contracts").joinpath("data/mechanic_contracts.json").read_text()
    )
    for entry in raw["contracts"]:
        if entry["mechanic"] == "sequencing":
            entry["needs_diagram"] = True
    with pytest.raises(ValueError):
        ContractRegistry.from_config(raw)
