"""Canonical document format: key-sorted JSON with no insignificant whitespace.

The canonical form is the wire format between modules, the on-disk format,
and the input to every provenance digest, so it must be byte-stable for
identical values on any platform.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest_payload(payload: Any) -> str:
    """Hex digest of a payload's canonical form; used for provenance and caching."""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def short_digest(payload: Any) -> str:
    return digest_payload(payload)[:16]


def load_json(text: str) -> Any:
    return json.loads(text)
