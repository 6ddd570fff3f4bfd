import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from diva.errors import InvalidParameter
from diva.graph import generate_er


def test_same_seed_same_graph():
    a = generate_er(300, 0.02, rng_seed=5)
    b = generate_er(300, 0.02, rng_seed=5)
    assert a.ids == b.ids
    assert (a.edges == b.edges).all()


def test_different_seed_different_edges():
    a = generate_er(300, 0.02, rng_seed=5)
    b = generate_er(300, 0.02, rng_seed=6)
    assert a.edges.shape != b.edges.shape or (a.edges != b.edges).any()


def test_p_zero_gives_no_edges():
    g = generate_er(40, 0.0, rng_seed=1)
    assert g.n_edges == 0
    assert g.n_nodes == 40


def test_p_one_gives_complete_graph():
    n = 25
    g = generate_er(n, 1.0, rng_seed=1)
    assert g.n_edges == n * (n - 1) // 2


def test_single_node():
    g = generate_er(1, 0.5, rng_seed=0)
    assert g.n_nodes == 1
    assert g.n_edges == 0


def test_edge_count_within_binomial_band():
    # n=1000, p=0.01: mean 4995, sd ~70.3; 4 sd on both sides.
    n, p = 1000, 0.01
    total = n * (n - 1) // 2
    mean = total * p
    sd = np.sqrt(total * p * (1 - p))
    counts = [generate_er(n, p, rng_seed=s).n_edges for s in range(5)]
    for c in counts:
        assert abs(c - mean) < 4 * sd, (c, mean, sd)
    # And the five draws should not all be identical.
    assert len(set(counts)) > 1


def test_ids_are_stringified_indices():
    g = generate_er(5, 0.5, rng_seed=2)
    assert g.ids == ("0", "1", "2", "3", "4")


@pytest.mark.parametrize("n,p", [(0, 0.5), (-3, 0.5), (5, -0.1), (5, 1.5)])
def test_domain_errors(n, p):
    with pytest.raises(InvalidParameter):
        generate_er(n, p, rng_seed=0)


@given(n=st.integers(2, 60), p=st.floats(0.0, 1.0), seed=st.integers(0, 2**32))
def test_generated_edges_are_canonical(n, p, seed):
    g = generate_er(n, p, rng_seed=seed)
    rows = [tuple(r) for r in g.edges]
    assert rows == sorted(set(rows))
    assert all(0 <= s < t < n for s, t in rows)
