import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diva.errors import EmptyGraph
from diva.graph import build_graph

node_ids = st.text(
    alphabet=st.characters(whitelist_categories=("Ll", "Nd")),
    min_size=1, max_size=4,
)


def test_empty_node_set_rejected():
    with pytest.raises(EmptyGraph):
        build_graph([], [])


def test_isolated_nodes_kept():
    g = build_graph(["x", "y"], [])
    assert g.n_nodes == 2
    assert g.n_edges == 0


def test_duplicate_edges_collapse_and_count():
    g = build_graph(["a", "b"], [("a", "b"), ("b", "a"), ("a", "b")])
    assert g.n_edges == 1
    assert g.report.duplicate_edges_dropped == 2


def test_self_loops_dropped():
    g = build_graph(["a", "b"], [("a", "a"), ("a", "b")])
    assert g.n_edges == 1
    assert g.report.self_loops_dropped == 1


def test_directed_keeps_both_orientations():
    g = build_graph(["a", "b"], [("a", "b"), ("b", "a")], directed=True)
    assert g.n_edges == 2


def test_numeric_ids_sort_numerically():
    g = build_graph(["10", "2", "1"], [])
    assert g.ids == ("1", "2", "10")


def test_mixed_ids_numbers_before_text():
    g = build_graph(["b", "3", "a", "12"], [])
    assert g.ids == ("3", "12", "a", "b")


def test_neighbors_symmetrized():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("c", "b")])
    idx = g.index_of
    assert set(g.neighbors(idx["b"])) == {idx["a"], idx["c"]}
    assert set(g.neighbors(idx["a"])) == {idx["b"]}


def test_degrees_count_both_endpoints():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    idx = g.index_of
    assert g.degrees[idx["b"]] == 2
    assert g.degrees[idx["a"]] == 1


def test_directed_in_out_degrees():
    g = build_graph(["a", "b", "c"], [("a", "b"), ("a", "c")], directed=True)
    idx = g.index_of
    assert g.out_degrees[idx["a"]] == 2
    assert g.in_degrees[idx["a"]] == 0
    assert g.in_degrees[idx["b"]] == 1


def test_labels_filtered_to_known_ids():
    g = build_graph(["a"], [], labels={"a": "Alpha", "ghost": "?"})
    assert g.labels == {"a": "Alpha"}


@given(
    ids=st.lists(node_ids, min_size=1, max_size=12, unique=True),
    seed=st.integers(0, 2**16),
)
def test_edge_order_canonical_under_input_permutation(ids, seed):
    rng = np.random.default_rng(seed)
    pairs = [
        (a, b) for i, a in enumerate(ids) for b in ids[i + 1:]
        if rng.random() < 0.4
    ]
    g1 = build_graph(ids, pairs)
    shuffled = list(pairs)
    rng.shuffle(shuffled)
    flipped = [(b, a) if rng.random() < 0.5 else (a, b) for a, b in shuffled]
    g2 = build_graph(list(reversed(ids)), flipped)
    assert g1.ids == g2.ids
    assert (g1.edges == g2.edges).all()


@given(
    ids=st.lists(node_ids, min_size=2, max_size=10, unique=True),
    seed=st.integers(0, 2**16),
)
def test_edges_sorted_and_unique(ids, seed):
    rng = np.random.default_rng(seed)
    pairs = [
        (a, b) for a in ids for b in ids
        if a != b and rng.random() < 0.3
    ]
    g = build_graph(ids, pairs)
    rows = [tuple(r) for r in g.edges]
    assert rows == sorted(set(rows))
    if not g.directed:
        assert all(s < t for s, t in rows)
