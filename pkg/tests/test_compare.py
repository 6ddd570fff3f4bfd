import pytest

from diva.analytics import ComparisonResult, compare_runs
from diva.analytics.compare import common_infected, extend_to, f1_per_iteration
from diva.diffusion import ModelConfig, ModelKind, SeedSpec, run_dual, select_seeds
from diva.diffusion.trace import IterationTrace, TraceEntry
from diva.errors import LengthMismatch
from diva.graph import generate_er


def trace_from_infected(frames, n_nodes):
    """Build a minimal trace whose infected sets follow ``frames``."""
    entries = []
    prev: set[str] = set()
    cumulative: dict[str, int] = {}
    for t, members in enumerate(frames):
        status = {nid: 1 for nid in members - prev}
        status.update({nid: 0 for nid in prev - members})
        cumulative.update(status)
        infected = len(members)
        entries.append(
            TraceEntry(t, status, {0: n_nodes - infected, 1: infected})
        )
        prev = set(members)
    return IterationTrace("SI", 0, n_nodes, tuple(entries))


def test_f1_orientation_precision_vs_recall():
    a = trace_from_infected([{"x", "y"}], 4)          # A predicts 2 infected
    b = trace_from_infected([{"x"}], 4)               # B (reference) has 1
    [f1] = f1_per_iteration(a, b)
    # precision 1/2, recall 1/1 -> F1 = 2/3
    assert f1 == pytest.approx(2.0 / 3.0)


def test_f1_empty_set_conventions():
    both_empty = f1_per_iteration(trace_from_infected([set()], 3),
                                  trace_from_infected([set()], 3))
    assert both_empty == [1.0]
    one_empty = f1_per_iteration(trace_from_infected([{"x"}], 3),
                                 trace_from_infected([set()], 3))
    assert one_empty == [0.0]
    disjoint = f1_per_iteration(trace_from_infected([{"x"}], 3),
                                trace_from_infected([{"y"}], 3))
    assert disjoint == [0.0]


def test_common_infected_counts_intersection():
    a = trace_from_infected([{"x"}, {"x", "y", "z"}], 5)
    b = trace_from_infected([{"x"}, {"y", "z", "w"}], 5)
    assert common_infected(a, b) == [1, 2]


def test_mismatched_traces_rejected():
    a = trace_from_infected([{"x"}], 3)
    b = trace_from_infected([{"x"}], 4)
    with pytest.raises(LengthMismatch):
        f1_per_iteration(a, b)
    c = trace_from_infected([{"x"}, {"x"}], 3)
    with pytest.raises(LengthMismatch):
        common_infected(a, c)


def test_extend_to_pads_terminated_trace():
    entries = (TraceEntry(0, {"a": 1}, {0: 2, 1: 1}),)
    trace = IterationTrace("SI", 0, 3, entries, terminated_early=True)
    padded = extend_to(trace, 4)
    assert len(padded) == 4
    assert [e.iteration for e in padded.entries] == [0, 1, 2, 3]
    for extra in padded.entries[1:]:
        assert extra.status == {}
        assert extra.node_count == {0: 2, 1: 1}
    padded.verify_consistency()


def test_extend_to_refuses_live_trace():
    entries = (TraceEntry(0, {"a": 1}, {0: 2, 1: 1}),)
    live = IterationTrace("SI", 0, 3, entries, terminated_early=False)
    with pytest.raises(LengthMismatch):
        extend_to(live, 4)
    assert extend_to(live, 1) is live


def test_compare_runs_end_to_end():
    g = generate_er(50, 0.1, rng_seed=17)
    seeds = select_seeds(g, SeedSpec(fraction=0.1), rng_seed=3)
    a, b = run_dual(
        g,
        ModelConfig(kind=ModelKind.SIR, params={"beta": 0.2, "gamma": 0.1}, rng_seed=1),
        ModelConfig(kind=ModelKind.SIS, params={"beta": 0.2, "lambda": 0.1}, rng_seed=2),
        seeds,
        max_iterations=12,
    )
    result = compare_runs(a, b)
    assert isinstance(result, ComparisonResult)
    length = max(len(a), len(b))
    assert len(result.f1_per_iteration) == length
    assert len(result.common_infected) == length
    assert all(0.0 <= f <= 1.0 for f in result.f1_per_iteration)
    # Identical seeds mean iteration 0 agrees perfectly.
    assert result.f1_per_iteration[0] == 1.0
    assert result.common_infected[0] == len(seeds)
    assert set(result.class_series_a) == {0, 1, 2}
    assert set(result.class_series_b) == {0, 1}
    doc = result.to_dict()
    assert set(doc) == {
        "f1PerIteration", "commonInfectedPerIteration", "classSeriesA", "classSeriesB",
    }


def test_compare_identical_runs_scores_one():
    g = generate_er(40, 0.1, rng_seed=18)
    seeds = select_seeds(g, SeedSpec(fraction=0.1), rng_seed=5)
    config = ModelConfig(kind=ModelKind.SI, params={"beta": 0.3}, rng_seed=9)
    a, b = run_dual(g, config, config, seeds, max_iterations=8)
    result = compare_runs(a, b)
    assert all(f == 1.0 for f in result.f1_per_iteration)
    assert result.class_series_a == result.class_series_b
