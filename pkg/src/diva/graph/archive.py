"""Binary graph archive (.diva files).

A zlib-compressed canonical-JSON document holding the normalized graph,
optionally its computed layout (coordinates quantized to 4 decimals as
strings, which keeps the encoding byte-stable), and any cached statistics.
A manifest with a format version and a SHA-256 checksum over the payload
sections guards against version skew and bit rot.
"""

from __future__ import annotations

import hashlib
import json
import zlib

import numpy as np

from ..analytics.stats import StatResult
from ..errors import CorruptArchive, VersionMismatch
from ..jsonutil import canonical_dumps
from ..layout.params import LayoutParams, LayoutState
from .model import Graph, ParseReport

FORMAT_VERSION = 1


def _checksum(sections: dict) -> str:
    return hashlib.sha256(canonical_dumps(sections).encode("ascii")).hexdigest()


def save_diva(
    graph: Graph,
    layout: LayoutState | None = None,
    stats: dict[str, StatResult] | None = None,
) -> bytes:
    graph_doc = {
        "ids": list(graph.ids),
        "edges": graph.edges.ravel().tolist(),
        "directed": graph.directed,
        "labels": graph.labels or {},
        "attributes": graph.attributes or {},
    }
    layout_doc = None
    if layout is not None:
        coords = [f"{v:.4f}" for v in layout.positions.ravel()]
        layout_doc = {
            "coords": coords,
            "alpha": float(layout.alpha),
            "iterationsRun": int(layout.iterations_run),
            "converged": bool(layout.converged),
            "params": layout.params.to_dict(),
        }
    stats_doc = {name: res.to_dict() for name, res in (stats or {}).items()}

    sections = {"graph": graph_doc, "layout": layout_doc, "stats": stats_doc}
    manifest = {
        "formatVersion": FORMAT_VERSION,
        "nodeCount": graph.n_nodes,
        "edgeCount": graph.n_edges,
        "checksum": _checksum(sections),
    }
    payload = canonical_dumps({"manifest": manifest, **sections})
    return zlib.compress(payload.encode("ascii"), 6)


def load_diva(data: bytes) -> tuple[Graph, LayoutState | None, dict[str, StatResult]]:
    try:
        raw = zlib.decompress(data)
    except zlib.error as exc:
        raise CorruptArchive(f"decompression failed: {exc}") from None
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CorruptArchive(f"payload is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("manifest"), dict):
        raise CorruptArchive("payload missing manifest")

    manifest = doc["manifest"]
    version = manifest.get("formatVersion")
    if version != FORMAT_VERSION:
        raise VersionMismatch(
            f"archive format version {version!r}, reader supports {FORMAT_VERSION}",
            found=version,
            supported=FORMAT_VERSION,
        )
    sections = {
        "graph": doc.get("graph"),
        "layout": doc.get("layout"),
        "stats": doc.get("stats"),
    }
    if manifest.get("checksum") != _checksum(sections):
        raise CorruptArchive("checksum mismatch")

    gdoc = sections["graph"]
    try:
        ids = tuple(str(v) for v in gdoc["ids"])
        flat = np.asarray(gdoc["edges"], dtype=np.int64)
        edges = flat.reshape(-1, 2) if flat.size else np.empty((0, 2), dtype=np.int64)
        graph = Graph(
            ids=ids,
            edges=edges,
            directed=bool(gdoc["directed"]),
            labels={str(k): str(v) for k, v in (gdoc.get("labels") or {}).items()},
            attributes={str(k): dict(v) for k, v in (gdoc.get("attributes") or {}).items()},
            report=ParseReport(nodes=len(ids), edges=int(edges.shape[0])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptArchive(f"graph section malformed: {exc}") from None
    if graph.n_nodes != manifest.get("nodeCount") or graph.n_edges != manifest.get("edgeCount"):
        raise CorruptArchive("manifest node/edge counts disagree with payload")

    layout = None
    ldoc = sections["layout"]
    if ldoc is not None:
        try:
            coords = np.asarray([float(v) for v in ldoc["coords"]], dtype=np.float64)
            positions = coords.reshape(-1, 2)
            if positions.shape[0] != graph.n_nodes:
                raise ValueError("coordinate count does not match node count")
            layout = LayoutState(
                positions=positions,
                alpha=float(ldoc["alpha"]),
                iterations_run=int(ldoc["iterationsRun"]),
                converged=bool(ldoc.get("converged", False)),
                params=LayoutParams.from_dict(ldoc.get("params", {})),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptArchive(f"layout section malformed: {exc}") from None

    stats: dict[str, StatResult] = {}
    for name, sdoc in (sections["stats"] or {}).items():
        try:
            stats[name] = StatResult.from_dict(sdoc)
        except (KeyError, TypeError, ValueError) as exc:
            raise CorruptArchive(f"stats section malformed: {exc}") from None
    return graph, layout, stats
