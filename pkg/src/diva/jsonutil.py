"""Canonical JSON encoding.

Trace downloads must be byte-identical between the CLI and the HTTP API,
and archive checksums must survive a decode/re-encode cycle, so every
serialization in the package funnels through this one encoder: compact
separators, ASCII escapes, insertion-ordered keys.
"""

from __future__ import annotations

import json


def canonical_dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True, sort_keys=False)


def canonical_bytes(obj) -> bytes:
    return canonical_dumps(obj).encode("ascii")
