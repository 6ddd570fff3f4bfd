"""Dual-run comparison metrics.

Convention throughout: the positive class is status code 1, and the second
trace (B) is the reference, so precision is measured against A's infected
set and recall against B's.  Empty-set conventions: both infected sets
empty scores 1.0 (perfect agreement), exactly one empty scores 0.0.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..diffusion.trace import IterationTrace
from ..errors import LengthMismatch

INFECTED_CODE = 1


def _require_comparable(trace_a: IterationTrace, trace_b: IterationTrace) -> None:
    if trace_a.n_nodes != trace_b.n_nodes:
        raise LengthMismatch(
            "traces cover different node universes",
            nodes_a=trace_a.n_nodes,
            nodes_b=trace_b.n_nodes,
        )
    if len(trace_a) != len(trace_b):
        raise LengthMismatch(
            "traces have different lengths",
            len_a=len(trace_a),
            len_b=len(trace_b),
        )


def _f1(set_a: set[str], set_b: set[str]) -> float:
    if not set_a and not set_b:
        return 1.0
    if not set_a or not set_b:
        return 0.0
    common = len(set_a & set_b)
    if common == 0:
        return 0.0
    precision = common / len(set_a)
    recall = common / len(set_b)
    return 2.0 * precision * recall / (precision + recall)


def f1_per_iteration(trace_a: IterationTrace, trace_b: IterationTrace) -> list[float]:
    """Per-iteration F1 of A's infected set against B's as ground truth."""
    _require_comparable(trace_a, trace_b)
    sets_a = trace_a.nodes_in_class(INFECTED_CODE)
    sets_b = trace_b.nodes_in_class(INFECTED_CODE)
    return [_f1(a, b) for a, b in zip(sets_a, sets_b)]


def common_infected(trace_a: IterationTrace, trace_b: IterationTrace) -> list[int]:
    """Per-iteration count of nodes infected in both traces."""
    _require_comparable(trace_a, trace_b)
    sets_a = trace_a.nodes_in_class(INFECTED_CODE)
    sets_b = trace_b.nodes_in_class(INFECTED_CODE)
    return [len(a & b) for a, b in zip(sets_a, sets_b)]


def class_counts(trace: IterationTrace) -> dict[int, list[int]]:
    """The trace's per-class series, cross-checked against cumulative deltas."""
    trace.verify_consistency()
    return trace.class_counts()


@dataclass(frozen=True)
class ComparisonResult:
    f1_per_iteration: list[float]
    common_infected: list[int]
    class_series_a: dict[int, list[int]]
    class_series_b: dict[int, list[int]]

    def to_dict(self) -> dict:
        return {
            "f1PerIteration": self.f1_per_iteration,
            "commonInfectedPerIteration": self.common_infected,
            "classSeriesA": {str(c): s for c, s in sorted(self.class_series_a.items())},
            "classSeriesB": {str(c): s for c, s in sorted(self.class_series_b.items())},
        }


def extend_to(trace: IterationTrace, length: int) -> IterationTrace:
    """Pad a terminated trace with frozen-state entries up to ``length``.

    Only valid for traces that stopped at a fixed point: their state is
    provably constant afterwards, so padding adds empty deltas with the
    final census repeated.
    """
    if len(trace) >= length:
        return trace
    if not trace.terminated_early:
        raise LengthMismatch(
            "cannot extend a trace that did not reach a fixed point",
            len_trace=len(trace),
            wanted=length,
        )
    last = trace.entries[-1]
    extra = tuple(
        type(last)(iteration=i, status={}, node_count=dict(last.node_count))
        for i in range(len(trace), length)
    )
    return IterationTrace(
        model_kind=trace.model_kind,
        rng_seed=trace.rng_seed,
        n_nodes=trace.n_nodes,
        entries=trace.entries + extra,
        terminated_early=trace.terminated_early,
        metadata=dict(trace.metadata),
    )


def compare_runs(trace_a: IterationTrace, trace_b: IterationTrace) -> ComparisonResult:
    """Full dual-run comparison; terminated traces are frozen-extended so
    both series span the same iterations."""
    length = max(len(trace_a), len(trace_b))
    trace_a = extend_to(trace_a, length)
    trace_b = extend_to(trace_b, length)
    return ComparisonResult(
        f1_per_iteration=f1_per_iteration(trace_a, trace_b),
        common_infected=common_infected(trace_a, trace_b),
        class_series_a=class_counts(trace_a),
        class_series_b=class_counts(trace_b),
    )
