"""Wall-clock scaling of the generate -> layout -> stream -> archive pipeline.

For each size, times ER generation, the force layout, NDJSON stream
encoding, archive save, and archive reload, and reports the cold/warm
ratio (reload should beat redoing the layout by a wide margin).

    python3 scripts/scaling_benchmark.py [--sizes 1000 5000 25000]
                                         [--avg-degree 56]
"""

from __future__ import annotations

import argparse
import resource
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from diva.graph import generate_er, load_diva, save_diva
from diva.layout import compute_layout, encode_stream, stream_chunks


def _timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[1_000, 5_000, 25_000])
    ap.add_argument("--avg-degree", type=float, default=56.0,
                    help="target mean degree (sets the ER edge probability)")
    args = ap.parse_args()

    header = (f"{'nodes':>8} {'edges':>9} {'gen s':>7} {'layout s':>9} "
              f"{'stream s':>9} {'save s':>7} {'load s':>7} {'ratio':>6}")
    print(header)
    print("-" * len(header))
    for n in args.sizes:
        p = min(1.0, args.avg_degree / max(n - 1, 1))
        graph, t_gen = _timed(lambda: generate_er(n, p, rng_seed=42))
        layout, t_layout = _timed(lambda: compute_layout(graph))
        stream_len, t_stream = _timed(lambda: sum(
            len(c) for c in encode_stream(stream_chunks(graph, layout))))
        archive, t_save = _timed(lambda: save_diva(graph, layout=layout))
        (_, layout2, _), t_load = _timed(lambda: load_diva(archive))
        cold = t_gen + t_layout + t_stream
        ratio = cold / max(t_load + t_stream, 1e-9)
        print(f"{n:>8} {graph.n_edges:>9} {t_gen:>7.2f} {t_layout:>9.2f} "
              f"{t_stream:>9.2f} {t_save:>7.2f} {t_load:>7.2f} {ratio:>6.1f}x")
        assert layout2.positions.shape == layout.positions.shape
    peak_mb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(f"peak rss: {peak_mb:.0f} MB; stream bytes at largest size: "
          f"{stream_len}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
