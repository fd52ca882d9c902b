"""Pure-Python assignment scan over a finite constraint domain.

Semantics must match gamesmith._kernels._scan_cy exactly; the compiled
variant is the same odometer loop with typed C integers.

Rule encoding (parallel arrays):
  op 0: value(a) == v      op 1: value(a) != v
  op 2: value(a) == value(b)
  op 3: value(a) != value(b)
  op 4: value(a) <  value(b)   (by domain index)
"""

from __future__ import annotations

from typing import Sequence

BACKEND = "python"


def scan_assignments(
    domain_sizes: Sequence[int],
    ops: Sequence[int],
    var_a: Sequence[int],
    var_b: Sequence[int],
    values: Sequence[int],
    count_all: bool = False,
) -> tuple[int, int]:
    """Scan every assignment; returns (satisfying count, first satisfying index).

    With count_all False the scan stops at the first satisfying assignment,
    so an exhaustive pass happens only on unsatisfiable rule sets. The first
    index is -1 when nothing satisfies.
    """
    n_vars = len(domain_sizes)
    n_rules = len(ops)
    if n_vars == 0:
        return (0, -1)

    assignment = [0] * n_vars
    index = 0
    count = 0
    first = -1
    total = 1
    for size in domain_sizes:
        total *= size
    if total == 0:
        return (0, -1)

    while True:
        ok = True
        for r in range(n_rules):
            op = ops[r]
            a = assignment[var_a[r]]
            if op == 0:
                if a != values[r]:
                    ok = False
                    break
            elif op == 1:
                if a == values[r]:
                    ok = False
                    break
            else:
                b = assignment[var_b[r]]
                if op == 2:
                    if a != b:
                        ok = False
                        break
                elif op == 3:
                    if a == b:
                        ok = False
                        break
                elif a >= b:  # op == 4
                    ok = False
                    break
        if ok:
            count += 1
            if first < 0:
                first = index
            if not count_all:
                return (count, first)

        # Odometer increment; last variable is the fastest digit.
        pos = n_vars - 1
        while pos >= 0:
            assignment[pos] += 1
            if assignment[pos] < domain_sizes[pos]:
                break
            assignment[pos] = 0
            pos -= 1
        if pos < 0:
            return (count, first)
        index += 1
