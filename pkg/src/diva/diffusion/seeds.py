"""Seed selection: which nodes start infected."""

from __future__ import annotations

import numpy as np

from ..errors import UnknownSeedNode
from ..graph.model import Graph
from ..rng import STREAM_SEED_SELECTION, derive_rng
from .config import SeedSpec


def select_seeds(graph: Graph, spec: SeedSpec, rng_seed: int) -> set[str]:
    """Resolve a SeedSpec to concrete node ids.

    Fractional specs draw a uniform sample without replacement of
    round(fraction * n) nodes (at least one) from a stream derived only from
    ``rng_seed``, so the same (graph, spec, seed) always yields the same set.
    """
    if spec.explicit is not None:
        for nid in spec.explicit:
            if nid not in graph.index_of:
                raise UnknownSeedNode(f"seed node {nid!r} not in graph", node=nid)
        return set(spec.explicit)

    n = graph.n_nodes
    # round-half-up keeps e.g. 0.5% of 500 at 3 rather than banker's 2
    count = int(np.floor(spec.fraction * n + 0.5))
    count = max(1, min(n, count))
    rng = derive_rng(rng_seed, STREAM_SEED_SELECTION)
    chosen = rng.permutation(n)[:count]
    return {graph.ids[int(i)] for i in chosen}
