"""Seeded random graph generation."""

from __future__ import annotations

import numpy as np

from ..errors import InvalidParameter
from ..rng import STREAM_GENERATION, derive_rng
from .model import Graph, ParseReport


def generate_er(n: int, p: float, rng_seed: int) -> Graph:
    """G(n, p) Erdos-Renyi graph with node ids "0".."n-1".

    Uses geometric gap sampling over the ordered pair index, so runtime is
    O(n + m) rather than O(n^2) and the result is a deterministic function
    of (n, p, rng_seed).
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidParameter("n must be a positive integer", field="n", value=n)
    if not (0.0 <= p <= 1.0):
        raise InvalidParameter("p must lie in [0, 1]", field="p", value=p)

    total = n * (n - 1) // 2
    if p == 0.0 or total == 0:
        positions = np.empty(0, dtype=np.int64)
    elif p == 1.0:
        positions = np.arange(total, dtype=np.int64)
    else:
        rng = derive_rng(rng_seed, STREAM_GENERATION)
        log_q = np.log1p(-p)
        chunks = []
        pos = -1
        # Draw skip lengths in batches until the pair index space is exhausted.
        batch = int(total * p + 10.0 * np.sqrt(total * p) + 64)
        while pos < total:
            u = rng.random(batch)
            # Tiny p makes the geometric gap overflow (to inf, then past
            # int64); any gap beyond the pair index space is equivalent,
            # so let the division saturate and clamp before the cast.
            with np.errstate(over="ignore"):
                raw = np.floor(np.log(u) / log_q) + 1.0
            gaps = np.minimum(raw, float(total) + 1.0).astype(np.int64)
            hits = pos + np.cumsum(gaps)
            pos = int(hits[-1])
            chunks.append(hits)
        positions = np.concatenate(chunks)
        positions = positions[positions < total]

    # Decode ordered-pair index k into (i, j), i < j, lexicographic order.
    if positions.size:
        offsets = np.zeros(n, dtype=np.int64)
        row_sizes = np.arange(n - 1, 0, -1, dtype=np.int64)
        offsets[1:] = np.cumsum(row_sizes)
        i = np.searchsorted(offsets, positions, side="right") - 1
        j = positions - offsets[i] + i + 1
        edges = np.stack([i, j], axis=1)
    else:
        edges = np.empty((0, 2), dtype=np.int64)

    ids = tuple(str(k) for k in range(n))
    report = ParseReport(nodes=n, edges=int(edges.shape[0]))
    return Graph(ids=ids, edges=edges, directed=False, report=report)
