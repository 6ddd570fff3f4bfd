"""Chunked streaming of a laid-out graph.

The wire format is newline-delimited JSON: each chunk is a one-line header
``{"seq":k,"kind":"...","total":T}`` followed by one record per line.
A stream carries ceil(n/chunkSize) NodeBatch chunks, ceil(m/chunkSize)
EdgeBatch chunks, and a final empty Done chunk, with consecutive sequence
numbers from zero.  Node records carry the index, both coordinates at the
stored 4-decimal precision, and the degree used for client-side shading.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from ..errors import InvalidParameter, LayoutIncomplete, MalformedInput
from ..graph.model import Graph
from .params import LayoutState

KIND_NODES = "NodeBatch"
KIND_EDGES = "EdgeBatch"
KIND_DONE = "Done"


@dataclass(frozen=True)
class StreamChunk:
    seq: int
    kind: str
    total: int
    records: tuple = field(default_factory=tuple)

    def header(self) -> dict:
        return {"seq": self.seq, "kind": self.kind, "total": self.total}


def chunk_count(n_nodes: int, n_edges: int, chunk_size: int) -> int:
    return math.ceil(n_nodes / chunk_size) + math.ceil(n_edges / chunk_size) + 1


def stream_chunks(
    graph: Graph, layout: LayoutState, chunk_size: int = 10_000
) -> Iterator[StreamChunk]:
    """Yield the chunk sequence for one laid-out graph."""
    if chunk_size < 1:
        raise InvalidParameter("chunkSize must be >= 1", field="chunkSize")
    n = graph.n_nodes
    pos = np.asarray(layout.positions, dtype=np.float64)
    if pos.ndim != 2 or pos.shape != (n, 2):
        raise LayoutIncomplete(
            "layout does not cover every node",
            expected=n,
            actual=int(pos.shape[0]) if pos.ndim == 2 else 0,
        )
    if not np.isfinite(pos).all():
        raise LayoutIncomplete("layout contains non-finite coordinates")
    degrees = graph.degrees
    edges = graph.edges
    m = int(edges.shape[0])
    total = chunk_count(n, m, chunk_size)
    seq = 0
    for start in range(0, n, chunk_size):
        stop = min(start + chunk_size, n)
        records = tuple(
            {
                "index": i,
                "x": round(float(pos[i, 0]), 4),
                "y": round(float(pos[i, 1]), 4),
                "degree": int(degrees[i]),
            }
            for i in range(start, stop)
        )
        yield StreamChunk(seq=seq, kind=KIND_NODES, total=total, records=records)
        seq += 1
    for start in range(0, m, chunk_size):
        stop = min(start + chunk_size, m)
        records = tuple(
            {"sourceIndex": int(edges[i, 0]), "targetIndex": int(edges[i, 1])}
            for i in range(start, stop)
        )
        yield StreamChunk(seq=seq, kind=KIND_EDGES, total=total, records=records)
        seq += 1
    yield StreamChunk(seq=seq, kind=KIND_DONE, total=total, records=())


def encode_chunk(chunk: StreamChunk) -> str:
    """One chunk as NDJSON text, trailing newline included."""
    lines = [json.dumps(chunk.header(), separators=(",", ":"))]
    for record in chunk.records:
        lines.append(json.dumps(record, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def encode_stream(chunks: Iterable[StreamChunk]) -> Iterator[str]:
    for chunk in chunks:
        yield encode_chunk(chunk)


def decode_stream(text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reassemble (positions, edges, degrees) from NDJSON stream text.

    Validates the framing contract: consecutive sequence numbers, a single
    trailing Done chunk, and the advertised total.
    """
    positions: dict[int, tuple[float, float]] = {}
    degrees: dict[int, int] = {}
    edge_rows: list[tuple[int, int]] = []
    expected_seq = 0
    total = None
    done_seen = False
    kind = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise MalformedInput("undecodable stream line", line=line_no) from exc
        if "seq" in obj and "kind" in obj:
            if done_seen:
                raise MalformedInput("chunk after Done", line=line_no)
            if obj["seq"] != expected_seq:
                raise MalformedInput(
                    "sequence gap", line=line_no,
                    expected=expected_seq, actual=obj["seq"],
                )
            if total is None:
                total = obj["total"]
            elif obj["total"] != total:
                raise MalformedInput("inconsistent total", line=line_no)
            kind = obj["kind"]
            expected_seq += 1
            if kind == KIND_DONE:
                done_seen = True
            elif kind not in (KIND_NODES, KIND_EDGES):
                raise MalformedInput(f"unknown chunk kind {kind!r}", line=line_no)
            continue
        if kind == KIND_NODES:
            positions[obj["index"]] = (obj["x"], obj["y"])
            degrees[obj["index"]] = obj["degree"]
        elif kind == KIND_EDGES:
            edge_rows.append((obj["sourceIndex"], obj["targetIndex"]))
        else:
            raise MalformedInput("record outside any batch", line=line_no)
    if not done_seen:
        raise MalformedInput("stream ended without Done chunk")
    if total is not None and expected_seq != total:
        raise MalformedInput(
            "chunk count mismatch", expected=total, actual=expected_seq
        )
    n = len(positions)
    if sorted(positions) != list(range(n)):
        raise MalformedInput("node indices are not dense")
    pos = np.array([positions[i] for i in range(n)], dtype=np.float64)
    pos = pos.reshape(n, 2) if n else pos.reshape(0, 2)
    deg = np.array([degrees[i] for i in range(n)], dtype=np.int64)
    edges = (
        np.array(edge_rows, dtype=np.int64)
        if edge_rows
        else np.empty((0, 2), dtype=np.int64)
    )
    return pos, edges, deg
