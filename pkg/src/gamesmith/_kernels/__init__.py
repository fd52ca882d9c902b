"""Backend selection for the assignment-scan kernel.

The compiled extension is used when it built successfully; otherwise the
pure-Python twin takes over with identical semantics. Set
GAMESMITH_PURE_PYTHON=1 to force the fallback (used by the benchmark and
the backend-equivalence tests).
"""

from __future__ import annotations

import os

from gamesmith._kernels import _scan_py

if os.environ.get("GAMESMITH_PURE_PYTHON"):
    _backend = _scan_py
else:
    try:
        from gamesmith._kernels import _scan_cy as _backend  # type: ignore[no-redef]
    except ImportError:
        _backend = _scan_py

scan_assignments = _backend.scan_assignments
KERNEL_BACKEND: str = _backend.BACKEND

__all__ = ["scan_assignments", "KERNEL_BACKEND"]
