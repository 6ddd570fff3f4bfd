"""Ingestion of externally produced iteration traces.

Uploaded traces get the full strictness treatment: schema validation,
graph membership of every status key, per-iteration census totals equal to
the node count, and cumulative agreement between deltas and censuses.  A
trace that passes ingestion behaves exactly like a simulated one downstream
(replay, comparison, reporting).
"""

from __future__ import annotations

import json

from ..errors import NodeCountMismatch, SchemaError, UnknownNode
from ..graph.model import Graph
from .trace import IterationTrace, parse_trace_document


def ingest_ground_truth(data: bytes | str, graph: Graph) -> IterationTrace:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SchemaError(f"trace upload is not UTF-8: {exc}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"trace upload is not valid JSON: {exc.msg}", line=exc.lineno) from None

    trace = parse_trace_document(doc, n_nodes=graph.n_nodes, model_kind="GroundTruth")

    state: dict[str, int] = {}
    for entry in trace.entries:
        for nid in entry.status:
            if nid not in graph.index_of:
                raise UnknownNode(
                    f"trace references node {nid!r} not present in the graph",
                    node=nid,
                    iteration=entry.iteration,
                )
        state.update(entry.status)

        total = sum(entry.node_count.values())
        if total != graph.n_nodes:
            raise NodeCountMismatch(
                f"iteration {entry.iteration} census sums to {total}, "
                f"graph has {graph.n_nodes} nodes",
                iteration=entry.iteration,
                total=total,
                expected=graph.n_nodes,
            )

        tallied: dict[int, int] = {}
        for code in state.values():
            tallied[code] = tallied.get(code, 0) + 1
        tallied[0] = tallied.get(0, 0) + graph.n_nodes - len(state)
        recorded = {c: n for c, n in entry.node_count.items() if n != 0}
        tallied = {c: n for c, n in tallied.items() if n != 0}
        if recorded != tallied:
            raise NodeCountMismatch(
                f"iteration {entry.iteration} census disagrees with accumulated "
                f"status deltas",
                iteration=entry.iteration,
                recorded=recorded,
                recomputed=tallied,
            )
    return trace
