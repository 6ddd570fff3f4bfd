"""Recovery-rate sweep: dual SIR runs with shared seeds, averaged over seeds.

Runs SIR(beta=0.05) twice per RNG seed with gamma=0.1 and gamma=0.05 on
the same graph and seed set, then reports the mean per-iteration recovered
counts.  On the LastFM-Asia network the faster recovery rate overtakes the
slower one from iteration 2 onward.

    python3 scripts/gamma_sweep.py [--graph data/lastfm_asia.edges]
                                   [--trials 100] [--iters 10]
                                   [--out gamma_sweep.csv]

Falls back to a 2,000-node ER graph when no graph file is given.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from diva.analytics.compare import extend_to
from diva.diffusion import ModelConfig, ModelKind, SeedSpec, run_dual, select_seeds
from diva.graph import GraphFormat, generate_er, parse_graph


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", help="edge-list file (default: ER 2000,0.005)")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--iters", type=int, default=10)
    ap.add_argument("--beta", type=float, default=0.05)
    ap.add_argument("--gamma-a", type=float, default=0.1)
    ap.add_argument("--gamma-b", type=float, default=0.05)
    ap.add_argument("--fraction", type=float, default=0.1)
    ap.add_argument("--out", default="gamma_sweep.csv")
    args = ap.parse_args()

    if args.graph:
        graph = parse_graph(Path(args.graph).read_bytes(), GraphFormat.EDGE_LIST)
    else:
        graph = generate_er(2000, 0.005, rng_seed=0)
    print(f"graph: {graph.n_nodes} nodes, {graph.n_edges} edges")

    horizon = args.iters
    sums_a = np.zeros(horizon + 1)
    sums_b = np.zeros(horizon + 1)
    start = time.perf_counter()
    for seed in range(args.trials):
        cfg_a = ModelConfig(ModelKind.SIR,
                            {"beta": args.beta, "gamma": args.gamma_a},
                            max_iterations=horizon, rng_seed=seed)
        cfg_b = ModelConfig(ModelKind.SIR,
                            {"beta": args.beta, "gamma": args.gamma_b},
                            max_iterations=horizon, rng_seed=seed)
        seeds = select_seeds(graph, SeedSpec(fraction=args.fraction), seed)
        trace_a, trace_b = run_dual(graph, cfg_a, cfg_b, seeds, horizon)
        sums_a += extend_to(trace_a, horizon + 1).class_counts()[2]
        sums_b += extend_to(trace_b, horizon + 1).class_counts()[2]
    elapsed = time.perf_counter() - start
    mean_a, mean_b = sums_a / args.trials, sums_b / args.trials

    print(f"{args.trials} trials x 2 configs in {elapsed:.1f}s")
    print(f"{'t':>3} {'recovered g=' + str(args.gamma_a):>18} "
          f"{'recovered g=' + str(args.gamma_b):>18}")
    for t in range(horizon + 1):
        print(f"{t:>3} {mean_a[t]:>18.1f} {mean_b[t]:>18.1f}")

    out = Path(args.out)
    with out.open("w") as fh:
        fh.write(f"iteration,recovered_gamma_{args.gamma_a},"
                 f"recovered_gamma_{args.gamma_b}\n")
        for t in range(horizon + 1):
            fh.write(f"{t},{mean_a[t]:.2f},{mean_b[t]:.2f}\n")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
