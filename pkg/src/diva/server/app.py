"""HTTP service exposing graphs, layout streams, stats, and diffusion runs.

All endpoints live under /api/v1 and, apart from session creation, require
a bearer token minted by POST /sessions.  Error responses always carry the
machine-readable ``code`` of the underlying exception plus its context
fields, so clients never have to parse message text.
"""

from __future__ import annotations

import os
import threading
from pathlib import Path

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response, StreamingResponse

from ..analytics.compare import compare_runs
from ..analytics.report import build_report
from ..analytics.stats import compute_stat
from ..diffusion.config import ModelConfig, SeedSpec
from ..diffusion.engine import run_dual, run_model
from ..diffusion.ground_truth import ingest_ground_truth
from ..diffusion.seeds import select_seeds
from ..errors import (
    DivaError,
    GraphNotFound,
    InvalidConfig,
    InvalidParameter,
    LayoutPending,
    RunFailed,
    RunPending,
    SessionNotFound,
)
from ..graph.archive import save_diva
from ..graph.formats import GraphFormat, parse_graph
from ..graph.generate import generate_er
from ..jsonutil import canonical_bytes
from ..layout import encode_chunk, stream_chunks
from .store import (
    RUN_DUAL,
    RUN_GROUND_TRUTH,
    RUN_SINGLE,
    STATUS_COMPLETE,
    STATUS_FAILED,
    STATUS_PENDING,
    GraphEntry,
    RunEntry,
    Session,
    SessionStore,
)

MAX_UPLOAD_BYTES = 512 * 1024 * 1024
MAX_NODES = 1_000_000
MAX_ITERATIONS = 10_000
DEFAULT_SYNC_NODE_LIMIT = 50_000
DEFAULT_PAGE_SIZE = 100
MAX_PAGE_SIZE = 10_000

_HTTP_STATUS = {
    "SessionNotFound": 401,
    "GraphNotFound": 404,
    "RunNotFound": 404,
    "LayoutPending": 409,
    "RunPending": 409,
    "RunFailed": 409,
    "MalformedInput": 422,
    "UnknownFormat": 422,
    "EmptyGraph": 422,
    "SchemaError": 422,
    "NodeCountMismatch": 422,
    "UnknownNode": 422,
    "TraceInconsistent": 422,
    "VersionMismatch": 422,
    "CorruptArchive": 422,
    "LayoutIncomplete": 409,
}

_EXTENSION_FORMATS = {
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


def _infer_format(filename: str | None, declared: str | None) -> GraphFormat:
    if declared:
        return GraphFormat.from_name(declared)
    if filename:
        ext = Path(filename).suffix.lower()
        if ext in _EXTENSION_FORMATS:
            return _EXTENSION_FORMATS[ext]
    return GraphFormat.EDGE_LIST


def _require_int(value, name: str, minimum: int | None = None,
                 maximum: int | None = None) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidParameter(f"{name} must be an integer", field=name)
    if minimum is not None and value < minimum:
        raise InvalidParameter(f"{name} must be >= {minimum}", field=name)
    if maximum is not None and value > maximum:
        raise InvalidParameter(f"{name} must be <= {maximum}", field=name)
    return value


def create_app(
    data_dir: str | Path = "diva_data",
    ttl_hours: float = 24.0,
    sync_node_limit: int = DEFAULT_SYNC_NODE_LIMIT,
    layout_params=None,
) -> FastAPI:
    store = SessionStore(data_dir, ttl_hours=ttl_hours, layout_params=layout_params)
    app = FastAPI(title="diva", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store
    app.state.sync_node_limit = sync_node_limit

    @app.exception_handler(DivaError)
    async def _diva_error(request: Request, exc: DivaError):
        status = _HTTP_STATUS.get(exc.code, 400)
        body = {"code": exc.code, "message": exc.message}
        for key, value in exc.context.items():
            if key not in body:
                body[key] = value
        return JSONResponse(status_code=status, content=body)

    def _session(request: Request) -> Session:
        auth = request.headers.get("authorization", "")
        if not auth.lower().startswith("bearer "):
            raise SessionNotFound("missing bearer token")
        return store.get_session(auth[7:].strip())

    # -- sessions --------------------------------------------------------

    @app.post("/api/v1/sessions", status_code=201)
    def create_session():
        session = store.create_session()
        return {"sessionId": session.token, "ttlHours": store.ttl_seconds / 3600.0}

    # -- graph intake ------------------------------------------------------

    def _register_graph(session: Session, graph) -> GraphEntry:
        if graph.n_nodes > MAX_NODES:
            raise InvalidParameter(
                f"graph exceeds the {MAX_NODES}-node limit",
                field="nodes", limit=MAX_NODES, actual=graph.n_nodes,
            )
        entry = GraphEntry(graph_id=store.new_id(), graph=graph)
        with session.lock:
            session.graphs[entry.graph_id] = entry
            store.schedule_layout(session, entry)
        store.spill_graph(session, entry)
        return entry

    @app.post("/api/v1/graphs", status_code=201)
    async def create_graph(request: Request):
        session = _session(request)
        content_type = request.headers.get("content-type", "")
        if content_type.startswith("multipart/form-data"):
            form = await request.form()
            upload = form.get("file")
            if upload is None or isinstance(upload, str):
                raise InvalidParameter("multipart upload needs a 'file' part",
                                       field="file")
            data = await upload.read()
            if len(data) > MAX_UPLOAD_BYTES:
                raise InvalidParameter(
                    "upload exceeds the 512 MB limit",
                    field="file", limit=MAX_UPLOAD_BYTES,
                )
            declared = form.get("format")
            fmt = _infer_format(upload.filename, declared)
            graph = parse_graph(data, fmt)
            entry = _register_graph(session, graph)
            doc = {
                "graphId": entry.graph_id,
                "nodes": graph.n_nodes,
                "edges": graph.n_edges,
                "directed": graph.directed,
                "format": fmt.value,
            }
            if graph.report is not None:
                doc["parse"] = graph.report.to_dict()
            return JSONResponse(status_code=201, content=doc)
        body = await request.json()
        if not isinstance(body, dict) or "er" not in body:
            raise InvalidParameter(
                "JSON body must carry an 'er' generator spec", field="er"
            )
        er = body["er"]
        if not isinstance(er, dict):
            raise InvalidParameter("'er' must be an object", field="er")
        extra = set(er) - {"n", "p", "seed"}
        if extra:
            raise InvalidParameter(f"unknown er fields {sorted(extra)}", field="er")
        n = _require_int(er.get("n"), "n", minimum=1, maximum=MAX_NODES)
        p = er.get("p")
        if not isinstance(p, (int, float)) or isinstance(p, bool):
            raise InvalidParameter("p must be a number", field="p")
        seed = _require_int(er.get("seed", 0), "seed")
        graph = generate_er(n, float(p), rng_seed=seed)
        entry = _register_graph(session, graph)
        return JSONResponse(status_code=201, content={
            "graphId": entry.graph_id,
            "nodes": graph.n_nodes,
            "edges": graph.n_edges,
            "directed": graph.directed,
        })

    # -- streaming ---------------------------------------------------------

    @app.get("/api/v1/graphs/{graph_id}/stream")
    def stream_graph(graph_id: str, request: Request):
        session = _session(request)
        entry = session.get_graph(graph_id)
        if entry.layout is None:
            job = entry.job
            progress = job.progress() if job is not None else {"ticksDone": 0}
            raise LayoutPending("layout still computing", **progress)

        def gen():
            for chunk in stream_chunks(entry.graph, entry.layout):
                yield encode_chunk(chunk)

        return StreamingResponse(gen(), media_type="application/x-ndjson")

    # -- stats and node table ---------------------------------------------

    @app.get("/api/v1/graphs/{graph_id}/stats/{stat_name}")
    def graph_stat(graph_id: str, stat_name: str, request: Request):
        session = _session(request)
        entry = session.get_graph(graph_id)
        with session.lock:
            cached = stat_name in entry.stats
            if cached:
                result = entry.stats[stat_name]
        if not cached:
            result = compute_stat(entry.graph, stat_name)
            with session.lock:
                entry.stats[stat_name] = result
            store.spill_graph(session, entry)
        doc = result.to_dict()
        doc["cached"] = cached
        return doc

    @app.get("/api/v1/graphs/{graph_id}/nodes")
    def node_table(graph_id: str, request: Request, page: int = 0,
                   sort: str = "index", pageSize: int = DEFAULT_PAGE_SIZE):
        session = _session(request)
        entry = session.get_graph(graph_id)
        _require_int(page, "page", minimum=0)
        _require_int(pageSize, "pageSize", minimum=1, maximum=MAX_PAGE_SIZE)
        graph = entry.graph
        n = graph.n_nodes
        columns: dict[str, np.ndarray] = {
            "index": np.arange(n, dtype=np.float64),
            "degree": graph.degrees.astype(np.float64),
        }
        if graph.directed:
            columns["inDegree"] = graph.in_degrees.astype(np.float64)
            columns["outDegree"] = graph.out_degrees.astype(np.float64)
        with session.lock:
            per_node_stats = {
                name: result for name, result in entry.stats.items()
                if result.scope.value == "PerNode"
            }
        for name, result in per_node_stats.items():
            columns[name] = np.array(
                [result.values[node_id] for node_id in graph.ids], dtype=np.float64
            )
        descending = sort.startswith("-")
        key = sort[1:] if descending else sort
        if key == "id":
            key = "index"
        if key not in columns:
            raise InvalidParameter(
                f"unknown sort key {sort!r}", field="sort",
                known=sorted(columns) + ["id"],
            )
        values = columns[key]
        order = np.argsort(-values if descending else values, kind="stable")
        start = page * pageSize
        stop = min(start + pageSize, n)
        rows = []
        for idx in order[start:stop]:
            i = int(idx)
            row = {"index": i, "id": graph.ids[i], "degree": int(graph.degrees[i])}
            if graph.directed:
                row["inDegree"] = int(graph.in_degrees[i])
                row["outDegree"] = int(graph.out_degrees[i])
            for name in per_node_stats:
                row[name] = float(columns[name][i])
            rows.append(row)
        return {
            "rows": rows,
            "page": page,
            "pageSize": pageSize,
            "total": n,
            "sort": sort,
        }

    # -- diffusion runs ----------------------------------------------------

    def _finish_run(session: Session, entry: RunEntry, traces) -> None:
        with session.lock:
            entry.traces = tuple(traces)
            entry.status = STATUS_COMPLETE
        store.spill_run(session, entry)

    def _fail_run(session: Session, entry: RunEntry, exc: Exception) -> None:
        detail = {"code": getattr(exc, "code", "InternalError"),
                  "message": str(exc)}
        with session.lock:
            entry.error = detail
            entry.status = STATUS_FAILED
        store.spill_run(session, entry)

    @app.post("/api/v1/graphs/{graph_id}/runs", status_code=201)
    async def start_run(graph_id: str, request: Request):
        session = _session(request)
        entry = session.get_graph(graph_id)
        body = await request.json()
        if not isinstance(body, dict):
            raise InvalidConfig("run request must be a JSON object")
        if "seeds" not in body:
            raise InvalidConfig("run request needs a 'seeds' spec", field="seeds")
        seed_spec = SeedSpec.from_dict(body["seeds"])
        graph = entry.graph

        if "dual" in body:
            extra = set(body) - {"dual", "seeds", "maxIterations"}
            if extra:
                raise InvalidConfig(f"unknown run fields {sorted(extra)}")
            pair = body["dual"]
            if not isinstance(pair, list) or len(pair) != 2:
                raise InvalidConfig("'dual' must hold exactly two configs",
                                    field="dual")
            config_a = ModelConfig.from_dict(pair[0])
            config_b = ModelConfig.from_dict(pair[1])
            max_iterations = body.get(
                "maxIterations",
                max(config_a.max_iterations, config_b.max_iterations),
            )
            _require_int(max_iterations, "maxIterations", minimum=1,
                         maximum=MAX_ITERATIONS)
            seeds = select_seeds(graph, seed_spec, config_a.rng_seed)
            run = RunEntry(
                run_id=store.new_id(), graph_id=graph_id, kind=RUN_DUAL,
                configs=(config_a, config_b), seeds=seed_spec,
            )

            def execute_dual():
                return run_dual(graph, config_a, config_b, seeds, max_iterations)

            work = execute_dual
        else:
            extra = set(body) - {"config", "seeds"}
            if extra:
                raise InvalidConfig(f"unknown run fields {sorted(extra)}")
            if "config" not in body:
                raise InvalidConfig("run request needs a 'config'", field="config")
            config = ModelConfig.from_dict(body["config"])
            _require_int(config.max_iterations, "maxIterations", minimum=1,
                         maximum=MAX_ITERATIONS)
            seeds = select_seeds(graph, seed_spec, config.rng_seed)
            run = RunEntry(
                run_id=store.new_id(), graph_id=graph_id, kind=RUN_SINGLE,
                configs=(config,), seeds=seed_spec,
            )

            def execute_single():
                return (run_model(graph, config, seeds),)

            work = execute_single

        with session.lock:
            session.runs[run.run_id] = run

        if graph.n_nodes <= app.state.sync_node_limit:
            try:
                traces = work()
            except DivaError:
                with session.lock:
                    session.runs.pop(run.run_id, None)
                raise
            _finish_run(session, run, traces)
        else:
            store.spill_run(session, run)

            def background():
                try:
                    _finish_run(session, run, work())
                except Exception as exc:
                    _fail_run(session, run, exc)

            threading.Thread(target=background, daemon=True,
                             name=f"run-{run.run_id}").start()
        return JSONResponse(status_code=201, content=run.handle())

    @app.post("/api/v1/graphs/{graph_id}/ground-truth", status_code=201)
    async def upload_ground_truth(graph_id: str, request: Request):
        session = _session(request)
        entry = session.get_graph(graph_id)
        data = await request.body()
        if len(data) > MAX_UPLOAD_BYTES:
            raise InvalidParameter("upload exceeds the 512 MB limit",
                                   field="body", limit=MAX_UPLOAD_BYTES)
        trace = ingest_ground_truth(data, entry.graph)
        run = RunEntry(
            run_id=store.new_id(), graph_id=graph_id, kind=RUN_GROUND_TRUTH,
            status=STATUS_COMPLETE, traces=(trace,),
        )
        with session.lock:
            session.runs[run.run_id] = run
        store.spill_run(session, run)
        return JSONResponse(status_code=201, content=run.handle())

    # -- run retrieval -----------------------------------------------------

    def _complete_run(session: Session, run_id: str) -> RunEntry:
        run = session.get_run(run_id)
        if run.status == STATUS_PENDING:
            raise RunPending("run still executing", runId=run_id,
                             status=run.status)
        if run.status == STATUS_FAILED:
            raise RunFailed("run failed", runId=run_id, detail=run.error)
        return run

    @app.get("/api/v1/runs/{run_id}")
    def run_handle(run_id: str, request: Request):
        session = _session(request)
        return session.get_run(run_id).handle()

    @app.get("/api/v1/runs/{run_id}/trace")
    def run_trace(run_id: str, request: Request):
        session = _session(request)
        run = _complete_run(session, run_id)
        if run.kind == RUN_DUAL:
            payload = canonical_bytes({
                "a": run.traces[0].to_document(),
                "b": run.traces[1].to_document(),
            })
        else:
            payload = run.traces[0].serialize()
        return Response(content=payload, media_type="application/json")

    @app.get("/api/v1/runs/{run_id}/report")
    def run_report(run_id: str, request: Request, vs: str | None = None):
        session = _session(request)
        run = _complete_run(session, run_id)
        if vs is not None:
            if run.kind == RUN_DUAL:
                raise InvalidParameter(
                    "'vs' applies to single-trace runs only", field="vs"
                )
            other = _complete_run(session, vs)
            if other.kind == RUN_DUAL:
                raise InvalidParameter(
                    "'vs' must reference a single-trace run", field="vs"
                )
            traces = [run.traces[0], other.traces[0]]
        elif run.kind == RUN_DUAL:
            traces = [run.traces[0], run.traces[1]]
        else:
            traces = [run.traces[0]]
        comparison = compare_runs(traces[0], traces[1]) if len(traces) == 2 else None
        report = build_report(traces, comparison=comparison)
        return Response(content=canonical_bytes(report.to_dict()),
                        media_type="application/json")

    # -- export --------------------------------------------------------------

    @app.get("/api/v1/graphs/{graph_id}/export.diva")
    def export_diva(graph_id: str, request: Request):
        session = _session(request)
        entry = session.get_graph(graph_id)
        with session.lock:
            payload = save_diva(entry.graph, layout=entry.layout,
                                stats=entry.stats)
        return Response(
            content=payload,
            media_type="application/octet-stream",
            headers={"Content-Disposition": 'attachment; filename="graph.diva"'},
        )

    return app


def serve(port: int | None = None, data_dir: str | None = None,
          ttl_hours: float | None = None, host: str | None = None) -> None:
    """Run the service with uvicorn, honoring the DIVA_* environment."""
    import uvicorn

    port = port if port is not None else int(os.environ.get("DIVA_PORT", "8471"))
    data_dir = data_dir or os.environ.get("DIVA_DATA_DIR", "diva_data")
    if ttl_hours is None:
        ttl_hours = float(os.environ.get("DIVA_SESSION_TTL_HOURS", "24"))
    host = host or os.environ.get("DIVA_HOST", "127.0.0.1")
    app = create_app(data_dir=data_dir, ttl_hours=ttl_hours)
    uvicorn.run(app, host=host, port=port, log_level="warning")
