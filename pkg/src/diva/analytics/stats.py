"""Whole-graph and per-node statistics.

Every statistic returns a StatResult tagged with its scope so callers (HTTP
layer, archive cache, data table) can treat scalar and per-node outputs
uniformly.  Per-node values are keyed by external node id.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateGraph, InvalidParameter, UnknownStat
from ..graph.model import Graph


class Scope(enum.Enum):
    PER_NODE = "PerNode"
    WHOLE_GRAPH = "WholeGraph"


@dataclass(frozen=True)
class StatResult:
    name: str
    scope: Scope
    values: dict | float
    computed_at: float
    meta: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        doc = {
            "name": self.name,
            "scope": self.scope.value,
            "values": self.values,
            "computedAt": self.computed_at,
        }
        if self.meta:
            doc["meta"] = self.meta
        return doc

    @classmethod
    def from_dict(cls, doc: dict) -> "StatResult":
        return cls(
            name=doc["name"],
            scope=Scope(doc["scope"]),
            values=doc["values"],
            computed_at=float(doc["computedAt"]),
            meta=dict(doc.get("meta", {})),
        )


def _per_node(graph: Graph, name: str, array: np.ndarray, meta: dict | None = None) -> StatResult:
    values = {nid: array[i].item() for i, nid in enumerate(graph.ids)}
    return StatResult(name, Scope.PER_NODE, values, time.time(), meta or {})


def _scalar(name: str, value, meta: dict | None = None) -> StatResult:
    # Counts stay integers; everything else is a float.
    if not isinstance(value, int):
        value = float(value)
    return StatResult(name, Scope.WHOLE_GRAPH, value, time.time(), meta or {})


# ---------------------------------------------------------------------------
# degree family

def degree_stat(graph: Graph) -> StatResult:
    return _per_node(graph, "degree", graph.degrees)


def in_degree_stat(graph: Graph) -> StatResult:
    return _per_node(graph, "inDegree", graph.in_degrees)


def out_degree_stat(graph: Graph) -> StatResult:
    return _per_node(graph, "outDegree", graph.out_degrees)


def node_count_stat(graph: Graph) -> StatResult:
    return _scalar("nodes", graph.n_nodes)


def edge_count_stat(graph: Graph) -> StatResult:
    return _scalar("edges", graph.n_edges)


# ---------------------------------------------------------------------------
# PageRank

def pagerank_stat(
    graph: Graph,
    damping: float = 0.85,
    tol: float = 1e-8,
    max_iter: int = 200,
) -> StatResult:
    """Power iteration with uniform teleport and dangling redistribution.

    Converged when the L1 change between sweeps drops below ``tol``; the
    result's meta records whether that happened within ``max_iter``.
    """
    if not (0.0 < damping < 1.0):
        raise InvalidParameter("damping must lie in (0, 1)", field="damping")
    n = graph.n_nodes
    src, dst = graph.influence_edges
    out_deg = np.bincount(src, minlength=n).astype(np.float64)
    dangling = out_deg == 0
    rank = np.full(n, 1.0 / n)
    inv_out = np.zeros(n)
    inv_out[~dangling] = 1.0 / out_deg[~dangling]

    converged = False
    iterations = max_iter
    for sweep in range(1, max_iter + 1):
        contrib = rank * inv_out
        incoming = np.bincount(dst, weights=contrib[src], minlength=n)
        dangling_mass = rank[dangling].sum()
        new_rank = (1.0 - damping) / n + damping * (incoming + dangling_mass / n)
        delta = np.abs(new_rank - rank).sum()
        rank = new_rank
        if delta < tol:
            converged = True
            iterations = sweep
            break

    meta = {"converged": converged, "iterations": iterations, "damping": damping}
    return _per_node(graph, "pagerank", rank, meta)


# ---------------------------------------------------------------------------
# clustering

def _sorted_neighbor_sets(graph: Graph) -> list[np.ndarray]:
    indptr, indices = graph.neighbor_csr
    return [
        np.unique(indices[indptr[i]:indptr[i + 1]]) for i in range(graph.n_nodes)
    ]


def clustering_stat(graph: Graph) -> StatResult:
    """Local clustering coefficient; directed graphs are symmetrized first."""
    n = graph.n_nodes
    nbrs = _sorted_neighbor_sets(graph)
    coeff = np.zeros(n)
    for i in range(n):
        mine = nbrs[i]
        k = mine.size
        if k < 2:
            continue
        # Ordered pairs (j, l) of i-neighbors that are themselves adjacent;
        # each neighbor-neighbor edge is counted twice, matching k*(k-1).
        links = 0
        for j in mine:
            links += int(np.isin(nbrs[int(j)], mine, assume_unique=True).sum())
        coeff[i] = links / (k * (k - 1))
    meta = {"symmetrized": True} if graph.directed else {}
    return _per_node(graph, "clustering", coeff, meta)


def _triangle_triad_counts(graph: Graph) -> tuple[int, int]:
    """Returns (3 * triangles, connected triads), the transitivity ratio parts."""
    nbrs = _sorted_neighbor_sets(graph)
    degrees = np.array([a.size for a in nbrs], dtype=np.int64)
    triads = int((degrees * (degrees - 1) // 2).sum())
    closed = 0
    for i in range(graph.n_nodes):
        mine = nbrs[i]
        for j in mine:
            if j <= i:
                continue
            common = np.isin(nbrs[int(j)], mine, assume_unique=True).sum()
            closed += int(common)
    # Each triangle contributes one common neighbor per its three edges
    # counted once (i < j), i.e. `closed` == 3 * triangles.
    return closed, triads


def transitivity_stat(graph: Graph) -> StatResult:
    closed, triads = _triangle_triad_counts(graph)
    meta = {"symmetrized": True} if graph.directed else {}
    if triads == 0:
        meta["note"] = "no connected triads"
        return _scalar("transitivity", 0.0, meta)
    return _scalar("transitivity", closed / triads, meta)


def density_stat(graph: Graph) -> StatResult:
    n = graph.n_nodes
    if n < 2:
        raise DegenerateGraph("density undefined for graphs with fewer than 2 nodes")
    pairs = n * (n - 1)
    if not graph.directed:
        pairs //= 2
    return _scalar("density", graph.n_edges / pairs)


# ---------------------------------------------------------------------------
# registry

_REGISTRY = {
    "nodes": node_count_stat,
    "edges": edge_count_stat,
    "degree": degree_stat,
    "inDegree": in_degree_stat,
    "outDegree": out_degree_stat,
    "pagerank": pagerank_stat,
    "clustering": clustering_stat,
    "transitivity": transitivity_stat,
    "density": density_stat,
}


def available_stats() -> tuple[str, ...]:
    return tuple(_REGISTRY)


def compute_stat(graph: Graph, name: str, **params) -> StatResult:
    try:
        fn = _REGISTRY[name]
    except KeyError:
        raise UnknownStat(
            f"unknown statistic {name!r}", value=name, known=sorted(_REGISTRY)
        ) from None
    return fn(graph, **params)
