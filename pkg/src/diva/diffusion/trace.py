"""Iteration traces: the run artifact every other module consumes.

A trace is a list of per-iteration entries.  Entry 0 records the initial
assignment (seeds, pre-blocked nodes); every later entry records only the
nodes whose class changed that iteration, plus a full per-class census.
Unlisted nodes are implicitly susceptible at iteration 0.  The JSON wire
form mirrors this directly:

    [{"iteration": 0, "status": {"A": 1}, "node_count": {"0": 4, "1": 1}}, ...]
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from ..errors import SchemaError, TraceInconsistent
from ..jsonutil import canonical_bytes


@dataclass(frozen=True)
class TraceEntry:
    iteration: int
    status: dict[str, int]
    node_count: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "iteration": self.iteration,
            "status": dict(self.status),
            "node_count": {str(code): cnt for code, cnt in sorted(self.node_count.items())},
        }


@dataclass(frozen=True)
class IterationTrace:
    model_kind: str
    rng_seed: int
    n_nodes: int
    entries: tuple[TraceEntry, ...]
    terminated_early: bool = False
    metadata: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def iterations(self) -> int:
        """Index of the last recorded iteration."""
        return self.entries[-1].iteration if self.entries else 0

    # -- replay -------------------------------------------------------------

    def replay(self) -> Iterator[tuple[int, dict[str, int]]]:
        """Yield (iteration, full status map) by accumulating deltas.

        Only nodes that ever leave the susceptible class appear in the maps;
        absent nodes are susceptible (code 0) throughout.
        """
        state: dict[str, int] = {}
        for entry in self.entries:
            state.update(entry.status)
            yield entry.iteration, dict(state)

    def nodes_in_class(self, code: int) -> list[set[str]]:
        """Per-iteration sets of nodes currently in ``code``."""
        out = []
        members: set[str] = set()
        for entry in self.entries:
            for nid, c in entry.status.items():
                if c == code:
                    members.add(nid)
                else:
                    members.discard(nid)
            out.append(set(members))
        return out

    def class_counts(self) -> dict[int, list[int]]:
        """Per-class count series straight from the recorded censuses."""
        codes = sorted({c for e in self.entries for c in e.node_count})
        return {
            code: [e.node_count.get(code, 0) for e in self.entries] for code in codes
        }

    def verify_consistency(self) -> None:
        """Recompute censuses from the deltas and compare with the recorded ones."""
        state: dict[str, int] = {}
        for entry in self.entries:
            state.update(entry.status)
            tallied: dict[int, int] = {}
            for c in state.values():
                tallied[c] = tallied.get(c, 0) + 1
            tallied[0] = tallied.get(0, 0) + self.n_nodes - len(state)
            recorded = {c: n for c, n in entry.node_count.items() if n != 0}
            tallied = {c: n for c, n in tallied.items() if n != 0}
            if recorded != tallied:
                raise TraceInconsistent(
                    "recorded class counts disagree with accumulated deltas",
                    iteration=entry.iteration,
                    recorded=recorded,
                    recomputed=tallied,
                )

    # -- wire format ----------------------------------------------------------

    def to_document(self) -> list[dict]:
        return [entry.to_dict() for entry in self.entries]

    def serialize(self) -> bytes:
        return canonical_bytes(self.to_document())


def parse_trace_document(doc, n_nodes: int, model_kind: str = "GroundTruth",
                         rng_seed: int = 0) -> IterationTrace:
    """Schema-validate a wire-form trace document into an IterationTrace.

    Checks shape only (types, consecutive iterations, count domains); graph
    membership and census consistency are the ingestion layer's job.
    """
    if not isinstance(doc, list) or not doc:
        raise SchemaError("trace must be a non-empty list of iteration entries")
    entries = []
    for pos, raw in enumerate(doc):
        if not isinstance(raw, dict):
            raise SchemaError("trace entry must be an object", entry=pos)
        extra = set(raw) - {"iteration", "status", "node_count"}
        if extra:
            raise SchemaError(
                f"trace entry has unknown fields {sorted(extra)}", entry=pos
            )
        iteration = raw.get("iteration")
        if not isinstance(iteration, int) or isinstance(iteration, bool):
            raise SchemaError("iteration must be an integer", entry=pos)
        if iteration != pos:
            raise SchemaError(
                f"iterations must be consecutive from 0; entry {pos} has {iteration}",
                entry=pos,
            )
        status_raw = raw.get("status")
        if not isinstance(status_raw, dict):
            raise SchemaError("status must be an object", entry=pos)
        status: dict[str, int] = {}
        for nid, code in status_raw.items():
            if not isinstance(code, int) or isinstance(code, bool):
                raise SchemaError(
                    f"status code for node {nid!r} must be an integer", entry=pos
                )
            status[str(nid)] = code
        counts_raw = raw.get("node_count")
        if not isinstance(counts_raw, dict):
            raise SchemaError("node_count must be an object", entry=pos)
        node_count: dict[int, int] = {}
        for code_str, cnt in counts_raw.items():
            try:
                code = int(code_str)
            except (TypeError, ValueError):
                raise SchemaError(
                    f"node_count key {code_str!r} is not an integer code", entry=pos
                ) from None
            if not isinstance(cnt, int) or isinstance(cnt, bool) or cnt < 0:
                raise SchemaError(
                    f"node_count[{code_str}] must be a non-negative integer", entry=pos
                )
            node_count[code] = cnt
        entries.append(TraceEntry(iteration=iteration, status=status, node_count=node_count))
    return IterationTrace(
        model_kind=model_kind,
        rng_seed=rng_seed,
        n_nodes=n_nodes,
        entries=tuple(entries),
    )
