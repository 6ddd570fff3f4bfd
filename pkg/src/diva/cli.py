"""Command-line driver covering every capability without a server.

Commands
  run      simulate one model (or a dual pair) and write trace/report files
  stats    compute graph statistics to stdout and CSV
  layout   compute a force layout and archive it with the graph
  export   convert any supported input into a .diva archive
  serve    start the HTTP service

Exit codes are stable and enumerated in EXIT_CODES: 0 success, 2 usage
errors (argparse), and one distinct code per package error class, plus
FileNotFound (3) and BindFailure (21).  Artifacts are byte-deterministic:
the same invocation writes identical files, and trace JSON matches the
HTTP trace endpoint byte for byte.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from pathlib import Path

from .analytics.compare import compare_runs
from .analytics.report import build_report, comparison_csv, report_csv
from .analytics.stats import Scope, compute_stat
from .diffusion.config import ModelConfig, SeedSpec
from .diffusion.engine import run_dual, run_model
from .diffusion.seeds import select_seeds
from .errors import DivaError, InvalidParameter
from .graph.archive import save_diva
from .graph.formats import GraphFormat, parse_graph
from .graph.generate import generate_er
from .layout import LayoutParams, compute_layout

EXIT_CODES = {
    "Success": 0,
    "InternalError": 1,
    "Usage": 2,
    "FileNotFound": 3,
    "MalformedInput": 4,
    "UnknownFormat": 5,
    "EmptyGraph": 6,
    "InvalidParameter": 7,
    "InvalidConfig": 8,
    "UnknownSeedNode": 9,
    "RuleError": 10,
    "SchemaError": 11,
    "NodeCountMismatch": 12,
    "UnknownNode": 13,
    "TraceInconsistent": 14,
    "UnknownStat": 15,
    "LengthMismatch": 16,
    "DegenerateGraph": 17,
    "VersionMismatch": 18,
    "CorruptArchive": 19,
    "LayoutIncomplete": 20,
    "BindFailure": 21,
}

_SCALAR_PARAMS = ("beta", "gamma", "lambda", "alpha", "tau", "mu",
                  "adopter_rate", "blocked_fraction", "threshold",
                  "edge_threshold", "profile")
_PARAM_WIRE = {
    "beta": "beta", "gamma": "gamma", "lambda": "lambda", "alpha": "alpha",
    "tau": "tau", "mu": "mu", "adopter_rate": "adopterRate",
    "blocked_fraction": "blockedFraction", "threshold": "nodeThreshold",
    "edge_threshold": "edgeThreshold", "profile": "profile",
}


def _parse_er(text: str) -> tuple[int, float, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise InvalidParameter("--er expects n,p,seed", field="er", value=text)
    try:
        return int(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise InvalidParameter("--er expects n,p,seed", field="er",
                               value=text) from None


def _load_graph(args, spec: dict):
    graph_path = args.graph if args.graph is not None else spec.get("graph")
    er = args.er if args.er is not None else spec.get("er")
    if graph_path is not None and er is not None:
        raise InvalidParameter("give either --graph or --er, not both")
    if er is not None:
        if isinstance(er, str):
            n, p, seed = _parse_er(er)
        else:
            n, p, seed = int(er["n"]), float(er["p"]), int(er.get("seed", 0))
        return generate_er(n, p, rng_seed=seed)
    if graph_path is None:
        raise InvalidParameter("a graph source is required: --graph or --er")
    path = Path(graph_path)
    data = path.read_bytes()
    fmt_name = args.format if getattr(args, "format", None) else spec.get("format")
    if fmt_name:
        fmt = GraphFormat.from_name(fmt_name)
    else:
        fmt = _EXT_FORMATS.get(path.suffix.lower(), GraphFormat.EDGE_LIST)
    return parse_graph(data, fmt)


_EXT_FORMATS = {
    ".edges": GraphFormat.EDGE_LIST,
    ".edgelist": GraphFormat.EDGE_LIST,
    ".txt": GraphFormat.EDGE_LIST,
    ".csv": GraphFormat.EDGE_LIST,
    ".adj": GraphFormat.ADJACENCY_LIST,
    ".gexf": GraphFormat.GEXF,
    ".json": GraphFormat.JSON,
    ".graphml": GraphFormat.GRAPHML,
    ".diva": GraphFormat.DIVA_ARCHIVE,
}


def _config_doc(spec: dict, args, suffix: str) -> dict | None:
    """Merge one model's config from the spec file and its CLI flags."""
    key = "config" + ("2" if suffix else "")
    doc = dict(spec.get(key) or {})
    params = dict(doc.get("params") or {})
    model = getattr(args, "model" + suffix, None)
    if model is not None:
        doc["kind"] = model
    for flag in _SCALAR_PARAMS:
        value = getattr(args, flag + suffix, None)
        if value is not None:
            params[_PARAM_WIRE[flag]] = value
    for item in getattr(args, "param" + suffix, None) or []:
        if "=" not in item:
            raise InvalidParameter("--param expects KEY=VALUE", value=item)
        name, raw = item.split("=", 1)
        try:
            params[name] = json.loads(raw)
        except json.JSONDecodeError:
            params[name] = raw
    if params:
        doc["params"] = params
    iters = args.iters if args.iters is not None else spec.get("maxIterations")
    if iters is not None:
        doc["maxIterations"] = iters
    seed_flag = getattr(args, "seed" + suffix, None)
    if seed_flag is not None:
        doc["rngSeed"] = seed_flag
    if not doc.get("kind"):
        return None
    doc.setdefault("params", {})
    doc.setdefault("maxIterations", 1)
    doc.setdefault("rngSeed", 0)
    return doc


def _seed_spec(args, spec: dict) -> SeedSpec:
    if args.fraction is not None:
        return SeedSpec(fraction=args.fraction)
    if args.seed_nodes is not None:
        nodes = [s for s in args.seed_nodes.split(",") if s]
        return SeedSpec(explicit=tuple(nodes))
    if "seeds" in spec:
        return SeedSpec.from_dict(spec["seeds"])
    raise InvalidParameter("a seed spec is required: --fraction or --seed-nodes")


def _write(path: Path, data: bytes, quiet: bool = False) -> None:
    path.write_bytes(data)
    if not quiet:
        print(f"wrote {path}")


def cmd_run(args) -> int:
    spec = json.loads(Path(args.spec).read_text()) if args.spec else {}
    graph = _load_graph(args, spec)
    doc_a = _config_doc(spec, args, "")
    if doc_a is None:
        raise InvalidParameter("a model is required: --model or spec config")
    doc_b = _config_doc(spec, args, "2")
    config_a = ModelConfig.from_dict(doc_a)
    seed_spec = _seed_spec(args, spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"graph: {graph.n_nodes} nodes, {graph.n_edges} edges"
          + (", directed" if graph.directed else ""))

    seeds = select_seeds(graph, seed_spec, config_a.rng_seed)
    if doc_b is None:
        trace = run_model(graph, config_a, seeds)
        traces = [trace]
        comparison = None
    else:
        config_b = ModelConfig.from_dict(doc_b)
        max_iterations = max(config_a.max_iterations, config_b.max_iterations)
        trace_a, trace_b = run_dual(graph, config_a, config_b, seeds,
                                    max_iterations)
        traces = [trace_a, trace_b]
        comparison = compare_runs(trace_a, trace_b)

    for trace, name in zip(traces, ("trace_a.json", "trace_b.json")):
        flag = " (terminated early)" if trace.terminated_early else ""
        print(f"run {name[6]}: {trace.model_kind}, "
              f"{len(trace.entries)} entries{flag}")
        _write(out / name, trace.serialize())
    report = build_report(traces, comparison=comparison)
    _write(out / "report.csv", report_csv(report).encode())
    if comparison is not None:
        _write(out / "comparison.csv", comparison_csv(comparison).encode())
    if args.save_graph:
        _write(out / "graph.diva", save_diva(graph))
    return 0


def cmd_stats(args) -> int:
    spec = {}
    graph = _load_graph(args, spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    scalar_rows = []
    for name in args.stats:
        result = compute_stat(graph, name)
        if result.scope is Scope.WHOLE_GRAPH:
            value = result.values
            print(f"{name}\t{value}")
            scalar_rows.append((name, value))
        else:
            print(f"{name}\t<per-node: {len(result.values)} values>")
            lines = ["id,value"]
            lines += [f"{nid},{val!r}" for nid, val in result.values.items()]
            _write(out / f"{name}.csv", ("\n".join(lines) + "\n").encode())
    if scalar_rows:
        lines = ["stat,value"]
        lines += [f"{name},{value!r}" for name, value in scalar_rows]
        _write(out / "stats.csv", ("\n".join(lines) + "\n").encode())
    return 0


def cmd_layout(args) -> int:
    graph = _load_graph(args, {})
    params = LayoutParams() if args.max_ticks is None else \
        LayoutParams(max_ticks=args.max_ticks)
    state = compute_layout(graph, params)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"layout: {state.iterations_run} ticks, alpha {state.alpha:.6f}"
          + (", converged" if state.converged else ""))
    _write(out / "graph.diva", save_diva(graph, layout=state))
    return 0


def cmd_export(args) -> int:
    graph = _load_graph(args, {})
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"graph: {graph.n_nodes} nodes, {graph.n_edges} edges")
    _write(out / "graph.diva", save_diva(graph))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .server.app import create_app

    import os
    port = args.port if args.port is not None else \
        int(os.environ.get("DIVA_PORT", "8471"))
    data_dir = args.data_dir or os.environ.get("DIVA_DATA_DIR", "diva_data")
    ttl = args.ttl_hours if args.ttl_hours is not None else \
        float(os.environ.get("DIVA_SESSION_TTL_HOURS", "24"))
    host = args.host or os.environ.get("DIVA_HOST", "127.0.0.1")
    sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    try:
        sock.bind((host, port))
    except OSError as exc:
        sock.close()
        print(f"error: cannot bind {host}:{port} ({exc})", file=sys.stderr)
        return EXIT_CODES["BindFailure"]
    app = create_app(data_dir=data_dir, ttl_hours=ttl)
    print(f"serving on http://{host}:{port} (data dir: {data_dir})")
    config = uvicorn.Config(app, log_level="warning")
    server = uvicorn.Server(config)
    server.run(sockets=[sock])
    return 0


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="path to a graph file")
    p.add_argument("--format", help="input format (edges, adj, gexf, json, "
                                    "graphml, diva); inferred from extension "
                                    "when omitted")
    p.add_argument("--er", help="generate an Erdos-Renyi graph: n,p,seed")


def _add_model_flags(p: argparse.ArgumentParser, suffix: str) -> None:
    tag = " (second model)" if suffix else ""
    p.add_argument(f"--model{suffix}", help=f"model kind{tag}")
    for flag in _SCALAR_PARAMS:
        p.add_argument(f"--{flag.replace('_', '-')}{suffix}",
                       dest=flag + suffix, type=float,
                       help=f"{_PARAM_WIRE[flag]} parameter{tag}")
    p.add_argument(f"--param{suffix}", action="append", metavar="KEY=VALUE",
                   help=f"extra model parameter{tag}, repeatable")
    p.add_argument(f"--seed{suffix}", dest=f"seed{suffix}", type=int,
                   help=f"RNG seed{tag}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diva",
        description="Diffusion analytics: graphs, layouts, simulations, "
                    "comparisons, HTTP service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one model or a dual pair")
    _add_graph_source(p)
    _add_model_flags(p, "")
    _add_model_flags(p, "2")
    p.add_argument("--fraction", type=float,
                   help="fraction of nodes initially infected")
    p.add_argument("--seed-nodes", help="comma-separated explicit seed ids")
    p.add_argument("--iters", type=int, help="iteration budget")
    p.add_argument("--spec", help="JSON run spec; flags override its fields")
    p.add_argument("--out", default=".", help="output directory")
    p.add_argument("--save-graph", action="store_true",
                   help="also write graph.diva")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("stats", help="compute graph statistics")
    _add_graph_source(p)
    p.add_argument("stats", nargs="+", metavar="STAT",
                   help="statistic names (e.g. nodes edges density)")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("layout", help="compute a force layout")
    _add_graph_source(p)
    p.add_argument("--max-ticks", type=int, help="tick budget override")
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("export", help="write a .diva archive")
    _add_graph_source(p)
    p.add_argument("--out", default=".", help="output directory")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--port", type=int, help="port (default env DIVA_PORT or 8471)")
    p.add_argument("--host", help="bind host (default 127.0.0.1)")
    p.add_argument("--data-dir", help="spill directory (default env DIVA_DATA_DIR)")
    p.add_argument("--ttl-hours", type=float, help="session TTL")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error [FileNotFound]: {exc}", file=sys.stderr)
        return EXIT_CODES["FileNotFound"]
    except DivaError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_CODES.get(exc.code, 1)


if __name__ == "__main__":
    sys.exit(main())
