"""Independent reference implementations used to cross-check the package.

Everything here is written against the documented semantics, not against
the package internals: dense-matrix PageRank, brute-force triangle and
clustering counts, and a direct O(n^2) many-body force sum.  Keeping these
slow-but-obvious twins in the test tree lets the fast implementations be
refactored freely.
"""

from __future__ import annotations

import numpy as np

JIGGLE = 1e-6


def pagerank_reference(n: int, edges: np.ndarray, directed: bool,
                       damping: float = 0.85, tol: float = 1e-8,
                       max_iter: int = 200) -> np.ndarray:
    """Dense power iteration with uniform dangling redistribution."""
    adj = np.zeros((n, n), dtype=np.float64)
    for s, t in edges:
        adj[s, t] = 1.0
        if not directed:
            adj[t, s] = 1.0
    out_deg = adj.sum(axis=1)
    rank = np.full(n, 1.0 / n)
    for _ in range(max_iter):
        contrib = np.zeros(n)
        dangling = 0.0
        for v in range(n):
            if out_deg[v] == 0:
                dangling += rank[v]
            else:
                contrib += rank[v] * adj[v] / out_deg[v]
        new = (1.0 - damping) / n + damping * (contrib + dangling / n)
        if np.abs(new - rank).sum() < tol:
            rank = new
            break
        rank = new
    return rank


def _neighbor_sets(n: int, edges: np.ndarray) -> list[set[int]]:
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for s, t in edges:
        if s == t:
            continue
        nbrs[s].add(t)
        nbrs[t].add(s)
    return nbrs


def clustering_reference(n: int, edges: np.ndarray) -> np.ndarray:
    """Local clustering on the symmetrized simple graph."""
    nbrs = _neighbor_sets(n, edges)
    coef = np.zeros(n)
    for v in range(n):
        k = len(nbrs[v])
        if k < 2:
            continue
        links = 0
        ordered = sorted(nbrs[v])
        for i in range(k):
            for j in range(i + 1, k):
                if ordered[j] in nbrs[ordered[i]]:
                    links += 1
        coef[v] = 2.0 * links / (k * (k - 1))
    return coef


def transitivity_reference(n: int, edges: np.ndarray) -> float:
    """3 * triangles / connected triples on the symmetrized graph."""
    nbrs = _neighbor_sets(n, edges)
    triangles = 0
    for a in range(n):
        for b in nbrs[a]:
            if b <= a:
                continue
            for c in nbrs[b]:
                if c <= b:
                    continue
                if c in nbrs[a]:
                    triangles += 1
    triples = sum(len(s) * (len(s) - 1) // 2 for s in nbrs)
    if triples == 0:
        return 0.0
    return 3.0 * triangles / triples


def density_reference(n: int, m: int, directed: bool) -> float:
    pairs = n * (n - 1)
    return m / pairs if directed else 2.0 * m / pairs


def manybody_reference(pos: np.ndarray, charge: float = -30.0,
                       alpha: float = 1.0) -> np.ndarray:
    """Direct pairwise repulsion sum with the documented clamps.

    Distances shorter than 1 are softened to sqrt(l); exactly coincident
    pairs are separated along a deterministic index-signed epsilon.
    """
    n = pos.shape[0]
    out = np.zeros((n, 2))
    for i in range(n):
        fx = fy = 0.0
        for j in range(n):
            if i == j:
                continue
            dx = pos[j, 0] - pos[i, 0]
            dy = pos[j, 1] - pos[i, 1]
            if dx == 0.0 and dy == 0.0:
                sign = 1.0 if j > i else -1.0
                dx = JIGGLE * sign
                dy = -JIGGLE * sign
            l = dx * dx + dy * dy
            if l < 1.0:
                l = np.sqrt(l)
            f = charge * alpha / l
            fx += dx * f
            fy += dy * f
        out[i, 0] = fx
        out[i, 1] = fy
    return out


def random_simple_graph(rng: np.random.Generator, max_nodes: int = 50,
                        allow_directed: bool = True):
    """(n, edges, directed) triple for oracle sweeps; edges are index pairs."""
    n = int(rng.integers(2, max_nodes + 1))
    directed = bool(rng.integers(0, 2)) if allow_directed else False
    p = float(rng.uniform(0.02, 0.4))
    rows = []
    seen = set()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if not directed and j < i:
                continue
            if rng.random() < p:
                key = (i, j)
                if key not in seen:
                    seen.add(key)
                    rows.append(key)
    edges = np.array(rows, dtype=np.int64) if rows else np.empty((0, 2), dtype=np.int64)
    return n, edges, directed
