"""Core graph value type.

External node ids are strings; internally every node is a dense index into
``ids``, which is sorted numerically where ids look like integers and
lexically otherwise.  Edges are stored as a normalized (m, 2) int64 array:
no self-loops, no duplicates, undirected endpoints ordered low-high, rows
sorted lexicographically.  All downstream modules (layout, simulation,
analytics) work on the dense indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from ..errors import EmptyGraph


@dataclass(frozen=True)
class ParseReport:
    """What normalization did to the raw input."""

    nodes: int = 0
    edges: int = 0
    duplicate_edges_dropped: int = 0
    self_loops_dropped: int = 0
    comments_skipped: int = 0

    def to_dict(self) -> dict:
        return {
            "nodes": self.nodes,
            "edges": self.edges,
            "duplicateEdgesDropped": self.duplicate_edges_dropped,
            "selfLoopsDropped": self.self_loops_dropped,
            "commentsSkipped": self.comments_skipped,
        }


def _id_key(s: str):
    # Numeric ids sort by value so generated and file-loaded graphs agree on
    # index order; everything else falls back to lexicographic.
    if s.isascii() and s.isdigit():
        return (0, int(s), s)
    return (1, 0, s)


@dataclass(frozen=True)
class Graph:
    """Immutable normalized graph."""

    ids: tuple[str, ...]
    edges: np.ndarray  # (m, 2) int64, normalized
    directed: bool = False
    labels: dict[str, str] = field(default_factory=dict)
    attributes: dict[str, dict] = field(default_factory=dict)
    report: ParseReport | None = None

    # -- basic shape --------------------------------------------------------

    @property
    def n_nodes(self) -> int:
        return len(self.ids)

    @property
    def n_edges(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def index_of(self) -> dict[str, int]:
        return {nid: i for i, nid in enumerate(self.ids)}

    # -- adjacency views ----------------------------------------------------

    @cached_property
    def influence_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """(src, dst) arrays of every influence channel.

        Undirected edges influence both ways, so each contributes two
        entries; directed edges influence source to target only.
        """
        s = self.edges[:, 0]
        t = self.edges[:, 1]
        if self.directed:
            return s.copy(), t.copy()
        return np.concatenate([s, t]), np.concatenate([t, s])

    @cached_property
    def degrees(self) -> np.ndarray:
        """Total degree per node (in+out for directed graphs)."""
        if self.n_edges == 0:
            return np.zeros(self.n_nodes, dtype=np.int64)
        return np.bincount(self.edges.ravel(), minlength=self.n_nodes)

    @cached_property
    def in_degrees(self) -> np.ndarray:
        if not self.directed:
            return self.degrees
        if self.n_edges == 0:
            return np.zeros(self.n_nodes, dtype=np.int64)
        return np.bincount(self.edges[:, 1], minlength=self.n_nodes)

    @cached_property
    def out_degrees(self) -> np.ndarray:
        if not self.directed:
            return self.degrees
        if self.n_edges == 0:
            return np.zeros(self.n_nodes, dtype=np.int64)
        return np.bincount(self.edges[:, 0], minlength=self.n_nodes)

    @cached_property
    def neighbor_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR (indptr, indices) of undirected-style neighborhoods.

        For directed graphs this is the symmetrized view used by clustering
        and layout; simulation uses ``influence_edges`` instead.
        """
        n = self.n_nodes
        if self.n_edges == 0:
            return np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int64)
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.argsort(src, kind="stable")
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)
        return indptr, dst

    def neighbors(self, idx: int) -> np.ndarray:
        indptr, indices = self.neighbor_csr
        return indices[indptr[idx]:indptr[idx + 1]]

    def to_node_link(self) -> dict:
        """Node-link dict mirroring the JSON wire format."""
        nodes = []
        for nid in self.ids:
            rec: dict = {"id": nid}
            if nid in self.labels:
                rec["label"] = self.labels[nid]
            rec.update(self.attributes.get(nid, {}))
            nodes.append(rec)
        links = [
            {"source": self.ids[int(s)], "target": self.ids[int(t)]}
            for s, t in self.edges
        ]
        return {"directed": self.directed, "nodes": nodes, "links": links}


def build_graph(
    node_ids: Iterable[str],
    edge_pairs: Iterable[tuple[str, str]],
    directed: bool = False,
    labels: Mapping[str, str] | None = None,
    attributes: Mapping[str, dict] | None = None,
    comments_skipped: int = 0,
) -> Graph:
    """Normalize raw parser output into a Graph.

    Node ids are deduplicated and unified with edge endpoints; self-loops
    and duplicate edges are dropped and counted in the ParseReport.
    """
    id_set = set(node_ids)
    raw_edges = [(str(a), str(b)) for a, b in edge_pairs]
    for a, b in raw_edges:
        id_set.add(a)
        id_set.add(b)
    if not id_set:
        raise EmptyGraph("input declares no nodes")

    ids = tuple(sorted(id_set, key=_id_key))
    index = {nid: i for i, nid in enumerate(ids)}

    self_loops = 0
    seen: set[tuple[int, int]] = set()
    pairs: list[tuple[int, int]] = []
    for a, b in raw_edges:
        u, v = index[a], index[b]
        if u == v:
            self_loops += 1
            continue
        if not directed and u > v:
            u, v = v, u
        if (u, v) in seen:
            continue
        seen.add((u, v))
        pairs.append((u, v))
    dup_dropped = len(raw_edges) - self_loops - len(pairs)

    if pairs:
        edges = np.array(sorted(pairs), dtype=np.int64)
    else:
        edges = np.empty((0, 2), dtype=np.int64)

    report = ParseReport(
        nodes=len(ids),
        edges=len(pairs),
        duplicate_edges_dropped=dup_dropped,
        self_loops_dropped=self_loops,
        comments_skipped=comments_skipped,
    )
    labels = {k: v for k, v in (labels or {}).items() if k in index}
    attributes = {k: dict(v) for k, v in (attributes or {}).items() if k in index and v}
    return Graph(
        ids=ids,
        edges=edges,
        directed=directed,
        labels=labels,
        attributes=attributes,
        report=report,
    )
