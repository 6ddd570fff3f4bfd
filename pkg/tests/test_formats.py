import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diva.errors import MalformedInput, UnknownFormat
from diva.graph import build_graph
from diva.graph.formats import (
    GraphFormat,
    parse_adjacency_list,
    parse_edge_list,
    parse_gexf,
    parse_graph,
    parse_graphml,
    parse_json_graph,
    write_edge_list,
    write_graph,
    write_json_graph,
)

GEXF_SAMPLE = """<?xml version="1.0" encoding="UTF-8"?>
<gexf xmlns="http://www.gexf.net/1.2draft" version="1.2">
  <graph defaultedgetype="directed">
    <attributes class="node">
      <attribute id="0" title="weight" type="float"/>
    </attributes>
    <nodes>
      <node id="a" label="Alpha">
        <attvalues><attvalue for="0" value="1.5"/></attvalues>
      </node>
      <node id="b" label="Beta"/>
    </nodes>
    <edges>
      <edge id="e0" source="a" target="b"/>
    </edges>
  </graph>
</gexf>
"""

GRAPHML_SAMPLE = """<?xml version="1.0" encoding="UTF-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key id="d0" for="node" attr.name="color" attr.type="string"/>
  <graph id="G" edgedefault="undirected">
    <node id="n0"><data key="d0">red</data></node>
    <node id="n1"/>
    <node id="n2"/>
    <edge source="n0" target="n1"/>
    <edge source="n1" target="n2"/>
  </graph>
</graphml>
"""


def test_edge_list_basic():
    g = parse_edge_list("a b\nb c\n")
    assert g.n_nodes == 3
    assert g.n_edges == 2


def test_edge_list_isolated_single_token():
    g = parse_edge_list("a b\nloner\n")
    assert g.n_nodes == 3
    assert g.n_edges == 1


def test_edge_list_comments_counted():
    g = parse_edge_list("# header\na b\n# another\nb c\n")
    assert g.report.comments_skipped == 2


def test_edge_list_malformed_line_position():
    with pytest.raises(MalformedInput) as exc:
        parse_edge_list("a b\na b c d\n")
    assert exc.value.context.get("line") == 2


def test_adjacency_list():
    g = parse_adjacency_list("a: b c\nb: a\nd:\n")
    assert g.n_nodes == 4
    assert g.n_edges == 2


def test_adjacency_missing_colon():
    with pytest.raises(MalformedInput):
        parse_adjacency_list("a b c\n")


def test_json_node_link():
    text = """{"directed": false,
      "nodes": [{"id": "a", "label": "A", "size": 3}, {"id": "b"}],
      "links": [{"source": "a", "target": "b"}]}"""
    g = parse_json_graph(text)
    assert g.n_nodes == 2
    assert g.labels["a"] == "A"
    assert g.attributes["a"]["size"] == 3


def test_json_edges_alias():
    g = parse_json_graph(
        '{"nodes": [{"id": 1}, {"id": 2}], "edges": [{"source": 1, "target": 2}]}'
    )
    assert g.n_edges == 1
    assert g.ids == ("1", "2")


def test_gexf_directed_with_attributes():
    g = parse_gexf(GEXF_SAMPLE)
    assert g.directed
    assert g.n_nodes == 2
    assert g.labels["a"] == "Alpha"
    assert g.attributes["a"]["weight"] == 1.5


def test_gexf_malformed():
    with pytest.raises(MalformedInput):
        parse_gexf("<gexf><graph><node id broken")


def test_graphml_undirected_with_data():
    g = parse_graphml(GRAPHML_SAMPLE)
    assert not g.directed
    assert g.n_nodes == 3
    assert g.n_edges == 2
    assert g.attributes["n0"]["color"] == "red"


def test_parse_graph_dispatch_aliases():
    g = parse_graph(b"a b\n", "edges")
    assert g.n_edges == 1
    g = parse_graph(b"a b\n", GraphFormat.EDGE_LIST)
    assert g.n_edges == 1


def test_unknown_format_name():
    with pytest.raises(UnknownFormat):
        parse_graph(b"a b\n", "carrier-pigeon")


def test_write_unsupported_format():
    g = build_graph(["a"], [])
    with pytest.raises(UnknownFormat):
        write_graph(g, GraphFormat.GEXF)


def test_edge_list_roundtrip_keeps_isolated_nodes():
    g = build_graph(["a", "b", "c"], [("a", "b")])
    again = parse_edge_list(write_edge_list(g))
    assert again.ids == g.ids
    assert (again.edges == g.edges).all()


def test_json_roundtrip_preserves_labels_attributes():
    g = build_graph(
        ["a", "b"], [("a", "b")],
        labels={"a": "Alpha"}, attributes={"b": {"rank": 2}},
    )
    again = parse_json_graph(write_json_graph(g))
    assert again.labels == g.labels
    assert again.attributes == g.attributes


id_strategy = st.text(
    alphabet=st.characters(whitelist_categories=("Ll", "Nd")),
    min_size=1, max_size=5,
)


@given(
    ids=st.lists(id_strategy, min_size=1, max_size=10, unique=True),
    seed=st.integers(0, 2**16),
    directed=st.booleans(),
)
def test_json_roundtrip_property(ids, seed, directed):
    rng = np.random.default_rng(seed)
    pairs = [(a, b) for a in ids for b in ids if a != b and rng.random() < 0.3]
    g = build_graph(ids, pairs, directed=directed)
    again = parse_json_graph(write_json_graph(g))
    assert again.ids == g.ids
    assert again.directed == g.directed
    assert (again.edges == g.edges).all()


@given(
    ids=st.lists(id_strategy, min_size=1, max_size=10, unique=True),
    seed=st.integers(0, 2**16),
)
def test_edge_list_roundtrip_property(ids, seed):
    rng = np.random.default_rng(seed)
    pairs = [
        (a, b) for i, a in enumerate(ids) for b in ids[i + 1:]
        if rng.random() < 0.35
    ]
    g = build_graph(ids, pairs)
    again = parse_edge_list(write_edge_list(g))
    assert again.ids == g.ids
    assert (again.edges == g.edges).all()
