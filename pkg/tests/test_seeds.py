import pytest
from hypothesis import given
from hypothesis import strategies as st

from diva.diffusion import SeedSpec, select_seeds
from diva.errors import UnknownSeedNode
from diva.graph import build_graph, generate_er


def test_explicit_seeds_pass_through():
    g = build_graph(["a", "b", "c"], [("a", "b")])
    assert select_seeds(g, SeedSpec(explicit=("b", "c")), rng_seed=0) == {"b", "c"}


def test_explicit_unknown_node():
    g = build_graph(["a", "b"], [("a", "b")])
    with pytest.raises(UnknownSeedNode) as exc:
        select_seeds(g, SeedSpec(explicit=("a", "zz")), rng_seed=0)
    assert exc.value.context["node"] == "zz"


def test_fraction_count_rounds_half_up():
    g = generate_er(500, 0.01, rng_seed=0)
    # 0.005 * 500 = 2.5 -> 3 seeds
    assert len(select_seeds(g, SeedSpec(fraction=0.005), rng_seed=1)) == 3


def test_fraction_at_least_one():
    g = build_graph([str(i) for i in range(10)], [])
    assert len(select_seeds(g, SeedSpec(fraction=0.001), rng_seed=0)) == 1


def test_fraction_full_graph():
    g = generate_er(20, 0.1, rng_seed=0)
    assert select_seeds(g, SeedSpec(fraction=1.0), rng_seed=0) == set(g.ids)


def test_same_seed_same_selection():
    g = generate_er(100, 0.05, rng_seed=0)
    spec = SeedSpec(fraction=0.1)
    assert select_seeds(g, spec, 7) == select_seeds(g, spec, 7)
    assert select_seeds(g, spec, 7) != select_seeds(g, spec, 8)


@given(
    n=st.integers(1, 200),
    fraction=st.floats(0.001, 1.0),
    seed=st.integers(0, 2**32 - 1),
)
def test_fraction_count_formula(n, fraction, seed):
    g = build_graph([str(i) for i in range(n)], [])
    chosen = select_seeds(g, SeedSpec(fraction=fraction), rng_seed=seed)
    want = max(1, min(n, int(fraction * n + 0.5)))
    assert len(chosen) == want
    assert chosen <= set(g.ids)
