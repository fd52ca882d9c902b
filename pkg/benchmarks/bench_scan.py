#!/usr/bin/env python3
"""Benchmark the assignment-scan kernel: compiled extension vs pure Python.

The scan is the hot loop behind constraint-puzzle satisfiability: proving
UNSAT requires visiting every assignment, up to the 10^6 schema cap. Run:

    python benchmarks/bench_scan.py
"""

from __future__ import annotations

import time

from gamesmith._kernels import _scan_py

try:
    from gamesmith._kernels import _scan_cy
except ImportError:
    _scan_cy = None


def unsat_problem(n_vars: int, domain: int):
    """Pairwise all-different over a cyclic 'before' chain: unsatisfiable,
    so the scan must visit the full product."""
    domain_sizes = [domain] * n_vars
    ops, var_a, var_b, values = [], [], [], []
    for i in range(n_vars):
        ops.append(4)  # before
        var_a.append(i)
        var_b.append((i + 1) % n_vars)
        values.append(-1)
    return domain_sizes, ops, var_a, var_b, values


def time_backend(backend, problem, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        started = time.perf_counter()
        count, first = backend.scan_assignments(*problem, False)
        elapsed = time.perf_counter() - started
        assert count == 0 and first == -1
        best = min(best, elapsed)
    return best


def main() -> None:
    cases = [
        ("4 vars x 10 values (10^4)", unsat_problem(4, 10)),
        ("5 vars x 10 values (10^5)", unsat_problem(5, 10)),
        ("6 vars x 10 values (10^6, schema cap)", unsat_problem(6, 10)),
    ]
    print(f"{'case':42s} {'python':>10s} {'cython':>10s} {'speedup':>9s}")
    for name, problem in cases:
        py_time = time_backend(_scan_py, problem)
        if _scan_cy is None:
            print(f"{name:42s} {py_time * 1000:8.1f}ms {'n/a':>10s} {'n/a':>9s}")
            continue
        cy_time = time_backend(_scan_cy, problem)
        count_py = _scan_py.scan_assignments(*problem, True)
        count_cy = _scan_cy.scan_assignments(*problem, True)
        assert count_py == count_cy, "backends disagree"
        print(
            f"{name:42s} {py_time * 1000:8.1f}ms {cy_time * 1000:8.1f}ms {py_time / cy_time:8.1f}x"
        )
    if _scan_cy is None:
        print("compiled kernel not built; install with `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
