from .engine import compute_layout, initial_positions, many_body_forces, tick
from .params import LayoutParams, LayoutState
from .stream import (
    KIND_DONE,
    KIND_EDGES,
    KIND_NODES,
    StreamChunk,
    chunk_count,
    decode_stream,
    encode_chunk,
    encode_stream,
    stream_chunks,
)

__all__ = [
    "LayoutParams",
    "LayoutState",
    "StreamChunk",
    "chunk_count",
    "compute_layout",
    "decode_stream",
    "encode_chunk",
    "encode_stream",
    "initial_positions",
    "many_body_forces",
    "stream_chunks",
    "tick",
    "KIND_NODES",
    "KIND_EDGES",
    "KIND_DONE",
]
