"""Parsers and writers for the supported graph interchange formats.

Reading accepts EdgeList, AdjacencyList, GEXF, JSON (node-link), GraphML,
and the binary archive; writing covers the round-trip capable subset
(EdgeList, JSON, DivaArchive).  XML formats are parsed against a small
subset: node ids, labels, edge endpoints, directedness, plus declared node
attributes when present.  Styling metadata is ignored.
"""

from __future__ import annotations

import enum
import json
import xml.etree.ElementTree as ET

from ..errors import MalformedInput, UnknownFormat
from .model import Graph, build_graph


class GraphFormat(enum.Enum):
    EDGE_LIST = "EdgeList"
    ADJACENCY_LIST = "AdjacencyList"
    GEXF = "GEXF"
    JSON = "JSON"
    GRAPHML = "GraphML"
    DIVA_ARCHIVE = "DivaArchive"

    @classmethod
    def from_name(cls, name: str) -> "GraphFormat":
        wanted = str(name).replace("_", "").replace("-", "").lower()
        for fmt in cls:
            if fmt.value.lower() == wanted:
                return fmt
        # Common file-extension style aliases.
        aliases = {
            "edges": cls.EDGE_LIST,
            "edgelist": cls.EDGE_LIST,
            "adj": cls.ADJACENCY_LIST,
            "adjlist": cls.ADJACENCY_LIST,
            "gexf": cls.GEXF,
            "json": cls.JSON,
            "graphml": cls.GRAPHML,
            "diva": cls.DIVA_ARCHIVE,
        }
        if wanted in aliases:
            return aliases[wanted]
        raise UnknownFormat(f"unsupported graph format {name!r}", value=name)


def _ensure_text(data) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise MalformedInput(f"input is not valid UTF-8: {exc}") from None
    return str(data)


# ---------------------------------------------------------------------------
# EdgeList

def parse_edge_list(text: str) -> Graph:
    """Whitespace-separated pairs; single-token lines declare isolated nodes."""
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    comments = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments += 1
            continue
        tokens = line.split()
        if len(tokens) == 1:
            nodes.append(tokens[0])
        elif len(tokens) == 2:
            edges.append((tokens[0], tokens[1]))
        else:
            raise MalformedInput(
                f"expected 1 or 2 tokens, got {len(tokens)}", line=lineno
            )
    return build_graph(nodes, edges, directed=False, comments_skipped=comments)


def write_edge_list(graph: Graph) -> str:
    lines = [f"{graph.ids[int(s)]} {graph.ids[int(t)]}" for s, t in graph.edges]
    touched = set(graph.edges.ravel().tolist())
    lines.extend(
        graph.ids[i] for i in range(graph.n_nodes) if i not in touched
    )
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# AdjacencyList

def parse_adjacency_list(text: str) -> Graph:
    """Lines of the form ``node: neighbor neighbor ...``."""
    nodes: list[str] = []
    edges: list[tuple[str, str]] = []
    comments = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments += 1
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise MalformedInput("missing ':' separator", line=lineno)
        head = head.strip()
        if not head or len(head.split()) != 1:
            raise MalformedInput("adjacency head must be a single node id", line=lineno)
        nodes.append(head)
        for nbr in rest.split():
            edges.append((head, nbr))
    return build_graph(nodes, edges, directed=False, comments_skipped=comments)


# ---------------------------------------------------------------------------
# JSON node-link

def parse_json_graph(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict):
        raise MalformedInput("top-level JSON value must be an object")
    nodes_raw = doc.get("nodes")
    links_raw = doc.get("links", doc.get("edges"))
    if not isinstance(nodes_raw, list):
        raise MalformedInput("missing or non-list 'nodes'")
    if links_raw is None:
        links_raw = []
    if not isinstance(links_raw, list):
        raise MalformedInput("'links' must be a list")

    nodes: list[str] = []
    labels: dict[str, str] = {}
    attributes: dict[str, dict] = {}
    for pos, rec in enumerate(nodes_raw):
        if not isinstance(rec, dict) or "id" not in rec:
            raise MalformedInput("node record must be an object with 'id'", element=pos)
        nid = str(rec["id"])
        nodes.append(nid)
        if "label" in rec and rec["label"] is not None:
            labels[nid] = str(rec["label"])
        extras = {
            k: v for k, v in rec.items()
            if k not in ("id", "label") and isinstance(v, (int, float, str, bool))
        }
        if extras:
            attributes[nid] = extras

    edges: list[tuple[str, str]] = []
    for pos, rec in enumerate(links_raw):
        if not isinstance(rec, dict) or "source" not in rec or "target" not in rec:
            raise MalformedInput(
                "link record must be an object with 'source' and 'target'",
                element=pos,
            )
        edges.append((str(rec["source"]), str(rec["target"])))

    directed = bool(doc.get("directed", False))
    return build_graph(nodes, edges, directed=directed, labels=labels, attributes=attributes)


def write_json_graph(graph: Graph) -> str:
    return json.dumps(graph.to_node_link(), separators=(",", ":"), sort_keys=False)


# ---------------------------------------------------------------------------
# XML helpers

def _localname(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _parse_xml_root(text: str, expected_root: str) -> ET.Element:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        line = exc.position[0] if getattr(exc, "position", None) else None
        raise MalformedInput(f"invalid XML: {exc}", line=line) from None
    if _localname(root.tag) != expected_root:
        raise MalformedInput(
            f"expected <{expected_root}> document, found <{_localname(root.tag)}>"
        )
    return root


def _coerce_attr(value: str, attr_type: str | None):
    if attr_type in ("int", "long", "integer"):
        try:
            return int(value)
        except ValueError:
            return value
    if attr_type in ("float", "double"):
        try:
            return float(value)
        except ValueError:
            return value
    if attr_type in ("bool", "boolean"):
        return value.strip().lower() == "true"
    return value


# ---------------------------------------------------------------------------
# GEXF

def parse_gexf(text: str) -> Graph:
    root = _parse_xml_root(text, "gexf")
    graph_el = next((el for el in root.iter() if _localname(el.tag) == "graph"), None)
    if graph_el is None:
        raise MalformedInput("GEXF document has no <graph> element")
    directed = graph_el.get("defaultedgetype", "undirected").lower() == "directed"

    # Attribute declarations: id -> (title, type).
    attr_decls: dict[str, tuple[str, str | None]] = {}
    for decls in graph_el.iter():
        if _localname(decls.tag) == "attribute":
            aid = decls.get("id")
            if aid is not None:
                attr_decls[aid] = (decls.get("title") or aid, decls.get("type"))

    nodes: list[str] = []
    labels: dict[str, str] = {}
    attributes: dict[str, dict] = {}
    edges: list[tuple[str, str]] = []
    for el in graph_el.iter():
        name = _localname(el.tag)
        if name == "node":
            nid = el.get("id")
            if nid is None:
                raise MalformedInput("GEXF node without id", element=len(nodes))
            nid = str(nid)
            nodes.append(nid)
            if el.get("label") is not None:
                labels[nid] = el.get("label")
            values = {}
            for sub in el.iter():
                if _localname(sub.tag) == "attvalue":
                    ref = sub.get("for") or sub.get("id")
                    raw = sub.get("value")
                    if ref is None or raw is None:
                        continue
                    title, atype = attr_decls.get(ref, (ref, None))
                    values[title] = _coerce_attr(raw, atype)
            if values:
                attributes[nid] = values
        elif name == "edge":
            src, dst = el.get("source"), el.get("target")
            if src is None or dst is None:
                raise MalformedInput(
                    "GEXF edge without source/target", element=len(edges)
                )
            edges.append((str(src), str(dst)))
    return build_graph(nodes, edges, directed=directed, labels=labels, attributes=attributes)


# ---------------------------------------------------------------------------
# GraphML

def parse_graphml(text: str) -> Graph:
    root = _parse_xml_root(text, "graphml")
    keys: dict[str, tuple[str, str, str | None]] = {}
    for el in root.iter():
        if _localname(el.tag) == "key":
            kid = el.get("id")
            if kid is None:
                continue
            keys[kid] = (
                el.get("attr.name") or kid,
                el.get("for", "all"),
                el.get("attr.type"),
            )

    graph_el = next((el for el in root.iter() if _localname(el.tag) == "graph"), None)
    if graph_el is None:
        raise MalformedInput("GraphML document has no <graph> element")
    directed = graph_el.get("edgedefault", "undirected").lower() == "directed"

    nodes: list[str] = []
    labels: dict[str, str] = {}
    attributes: dict[str, dict] = {}
    edges: list[tuple[str, str]] = []
    for el in graph_el.iter():
        name = _localname(el.tag)
        if name == "node":
            nid = el.get("id")
            if nid is None:
                raise MalformedInput("GraphML node without id", element=len(nodes))
            nid = str(nid)
            nodes.append(nid)
            values = {}
            for sub in el:
                if _localname(sub.tag) != "data" or sub.get("key") is None:
                    continue
                attr_name, target, atype = keys.get(
                    sub.get("key"), (sub.get("key"), "node", None)
                )
                if target not in ("node", "all"):
                    continue
                raw = sub.text or ""
                if attr_name == "label":
                    labels[nid] = raw
                else:
                    values[attr_name] = _coerce_attr(raw, atype)
            if values:
                attributes[nid] = values
        elif name == "edge":
            src, dst = el.get("source"), el.get("target")
            if src is None or dst is None:
                raise MalformedInput(
                    "GraphML edge without source/target", element=len(edges)
                )
            edges.append((str(src), str(dst)))
    return build_graph(nodes, edges, directed=directed, labels=labels, attributes=attributes)


# ---------------------------------------------------------------------------
# dispatch

def parse_graph(data: bytes | str, fmt: GraphFormat | str) -> Graph:
    """Parse ``data`` as ``fmt``; raises MalformedInput / UnknownFormat / EmptyGraph."""
    if not isinstance(fmt, GraphFormat):
        fmt = GraphFormat.from_name(fmt)
    if fmt is GraphFormat.DIVA_ARCHIVE:
        from .archive import load_diva

        if isinstance(data, str):
            data = data.encode("latin-1", errors="ignore")
        graph, _, _ = load_diva(data)
        return graph
    text = _ensure_text(data)
    if fmt is GraphFormat.EDGE_LIST:
        return parse_edge_list(text)
    if fmt is GraphFormat.ADJACENCY_LIST:
        return parse_adjacency_list(text)
    if fmt is GraphFormat.JSON:
        return parse_json_graph(text)
    if fmt is GraphFormat.GEXF:
        return parse_gexf(text)
    if fmt is GraphFormat.GRAPHML:
        return parse_graphml(text)
    raise UnknownFormat(f"unsupported graph format {fmt!r}")


def write_graph(graph: Graph, fmt: GraphFormat | str) -> bytes:
    """Serialize ``graph``; only round-trip capable formats are writable."""
    if not isinstance(fmt, GraphFormat):
        fmt = GraphFormat.from_name(fmt)
    if fmt is GraphFormat.EDGE_LIST:
        return write_edge_list(graph).encode("utf-8")
    if fmt is GraphFormat.JSON:
        return write_json_graph(graph).encode("utf-8")
    if fmt is GraphFormat.DIVA_ARCHIVE:
        from .archive import save_diva

        return save_diva(graph)
    raise UnknownFormat(f"writing {fmt.value} is not supported", value=fmt.value)
