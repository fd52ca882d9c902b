"""Mechanic-specific structural checks behind QG3.

All checks are deterministic geometry/arithmetic; the constraint-puzzle
check delegates the exhaustive assignment scan to the compiled kernel (or
its pure-Python twin).
"""

from __future__ import annotations

from gamesmith._kernels import scan_assignments
from gamesmith.domain.types import (
    ClickRegionSpec,
    ComplexityTableSpec,
    PuzzleSpec,
    TreeSpec,
)

COMPLEXITY_CLASS_LABELS = ("O(1)", "O(log n)", "O(n)", "O(n log n)", "O(n^2)", "O(2^n)")

# Mean growth ratio over doubling input sizes, bucketed to the nearest class.
_RATIO_BOUNDS = (
    (1.15, "O(1)"),
    (1.7, "O(log n)"),
    (2.1, "O(n)"),
    (2.8, "O(n log n)"),
    (5.0, "O(n^2)"),
)


def overlapping_regions(spec: ClickRegionSpec) -> list[tuple[int, int]]:
    """Pairs of region indices whose axis-aligned boxes intersect (zero tolerance)."""
    pairs = []
    regions = spec.regions
    for i in range(len(regions)):
        _, xi, yi, wi, hi = regions[i]
        for j in range(i + 1, len(regions)):
            _, xj, yj, wj, hj = regions[j]
            if xi < xj + wj and xj < xi + wi and yi < yj + hj and yj < yi + hi:
                pairs.append((i, j))
    return pairs


def out_of_bounds_points(points: list[tuple[float, float]]) -> list[int]:
    return [i for i, (x, y) in enumerate(points) if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0)]


def tree_depth(spec: TreeSpec) -> int:
    return spec.depth()


def fit_complexity_class(samples: tuple[tuple[int, int], ...]) -> str:
    """Class label derived by ratio fitting over doubling input sizes."""
    ratios = []
    for (n_prev, s_prev), (n_next, s_next) in zip(samples, samples[1:]):
        if n_next != n_prev * 2:
            raise ValueError("complexity samples must double input size")
        if s_prev <= 0:
            ratios.append(float(s_next) if s_next > 0 else 1.0)
        else:
            ratios.append(s_next / s_prev)
    if not ratios:
        raise ValueError("need at least two samples to fit a class")
    mean_ratio = sum(ratios) / len(ratios)
    for bound, label in _RATIO_BOUNDS:
        if mean_ratio < bound:
            return label
    return "O(2^n)"


_RULE_OPS = {"eq": 0, "ne": 1, "same": 2, "diff": 3, "before": 4}


def encode_puzzle(spec: PuzzleSpec) -> tuple[list[int], list[int], list[int], list[int], list[int]]:
    var_index = {name: i for i, (name, _) in enumerate(spec.variables)}
    value_index = {
        name: {value: i for i, value in enumerate(domain)} for name, domain in spec.variables
    }
    domain_sizes = [len(domain) for _, domain in spec.variables]
    ops, var_a, var_b, values = [], [], [], []
    for rule in spec.rules:
        ops.append(_RULE_OPS[rule.op])
        var_a.append(var_index[rule.var_a])
        var_b.append(var_index.get(rule.var_b, -1) if rule.var_b else -1)
        values.append(value_index[rule.var_a].get(rule.value, -1) if rule.value else -1)
    return domain_sizes, ops, var_a, var_b, values


def puzzle_satisfiable(spec: PuzzleSpec) -> bool:
    """Existence of a satisfying assignment, decided by exhaustive scan."""
    domain_sizes, ops, var_a, var_b, values = encode_puzzle(spec)
    count, _ = scan_assignments(domain_sizes, ops, var_a, var_b, values, False)
    return count > 0


def puzzle_solution_count(spec: PuzzleSpec) -> int:
    domain_sizes, ops, var_a, var_b, values = encode_puzzle(spec)
    count, _ = scan_assignments(domain_sizes, ops, var_a, var_b, values, True)
    return count


def puzzle_first_solution(spec: PuzzleSpec) -> dict[str, str] | None:
    """The first satisfying assignment in odometer order, if any."""
    domain_sizes, ops, var_a, var_b, values = encode_puzzle(spec)
    count, first = scan_assignments(domain_sizes, ops, var_a, var_b, values, False)
    if count == 0:
        return None
    assignment: dict[str, str] = {}
    remaining = first
    for name, domain in reversed(spec.variables):
        remaining, digit = divmod(remaining, len(domain))
        assignment[name] = domain[digit]
    return assignment
