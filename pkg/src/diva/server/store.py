"""Session registry: in-memory state with per-session disk spill.

Every session owns a directory under the data root.  Graphs spill as .diva
archives (layout and stat cache included), runs as JSON documents, so a
restarted server recovers everything by re-reading those files on the first
request that presents the token.  Expired sessions are purged on contact.
"""

from __future__ import annotations

import dataclasses
import json
import secrets
import shutil
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..diffusion.config import ModelConfig, SeedSpec
from ..diffusion.trace import IterationTrace, parse_trace_document
from ..errors import GraphNotFound, RunNotFound, SessionNotFound
from ..graph.archive import load_diva, save_diva
from ..graph.model import Graph
from ..layout import LayoutParams, LayoutState, compute_layout


class LayoutJob:
    """Progress holder for one background layout computation."""

    def __init__(self, max_ticks: int):
        self.max_ticks = max_ticks
        self.ticks_done = 0
        self.error: str | None = None
        self.finished = threading.Event()

    def on_tick(self, done: int, total: int) -> None:
        self.ticks_done = done

    def progress(self) -> dict:
        return {"ticksDone": self.ticks_done, "maxTicks": self.max_ticks}


@dataclass
class GraphEntry:
    graph_id: str
    graph: Graph
    layout: LayoutState | None = None
    job: LayoutJob | None = None
    stats: dict = field(default_factory=dict)


RUN_SINGLE = "single"
RUN_DUAL = "dual"
RUN_GROUND_TRUTH = "groundTruth"

STATUS_PENDING = "Pending"
STATUS_COMPLETE = "Complete"
STATUS_FAILED = "Failed"


@dataclass
class RunEntry:
    run_id: str
    graph_id: str
    kind: str
    status: str = STATUS_PENDING
    configs: tuple = ()
    seeds: SeedSpec | None = None
    traces: tuple = ()
    error: dict | None = None

    def handle(self) -> dict:
        doc = {
            "runId": self.run_id,
            "graphId": self.graph_id,
            "kind": self.kind,
            "status": self.status,
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc


class Session:
    def __init__(self, token: str, root: Path, created_at: float | None = None,
                 last_touched: float | None = None):
        now = time.time()
        self.token = token
        self.root = root
        self.created_at = created_at if created_at is not None else now
        self.last_touched = last_touched if last_touched is not None else now
        self.graphs: dict[str, GraphEntry] = {}
        self.runs: dict[str, RunEntry] = {}
        self.lock = threading.RLock()

    def touch(self) -> None:
        self.last_touched = time.time()

    def get_graph(self, graph_id: str) -> GraphEntry:
        entry = self.graphs.get(graph_id)
        if entry is None:
            raise GraphNotFound(f"no graph {graph_id!r} in session", graphId=graph_id)
        return entry

    def get_run(self, run_id: str) -> RunEntry:
        entry = self.runs.get(run_id)
        if entry is None:
            raise RunNotFound(f"no run {run_id!r} in session", runId=run_id)
        return entry


def _trace_to_doc(trace: IterationTrace) -> dict:
    return {
        "modelKind": trace.model_kind,
        "rngSeed": trace.rng_seed,
        "nNodes": trace.n_nodes,
        "terminatedEarly": trace.terminated_early,
        "metadata": dict(trace.metadata),
        "entries": trace.to_document(),
    }


def _trace_from_doc(doc: dict) -> IterationTrace:
    trace = parse_trace_document(
        doc["entries"],
        n_nodes=doc["nNodes"],
        model_kind=doc["modelKind"],
        rng_seed=doc["rngSeed"],
    )
    return dataclasses.replace(
        trace,
        terminated_early=doc.get("terminatedEarly", False),
        metadata=doc.get("metadata", {}),
    )


class SessionStore:
    """Token-keyed sessions with TTL, spill, and restart recovery."""

    def __init__(self, data_dir: Path | str, ttl_hours: float = 24.0,
                 layout_params: LayoutParams | None = None):
        self.data_dir = Path(data_dir)
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        self.ttl_seconds = ttl_hours * 3600.0
        self.layout_params = layout_params or LayoutParams()
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    # -- lifecycle -------------------------------------------------------

    def create_session(self) -> Session:
        self._sweep_expired()
        token = secrets.token_urlsafe(24)
        session = Session(token, self.sessions_dir / token)
        session.root.mkdir(parents=True, exist_ok=True)
        with self._lock:
            self._sessions[token] = session
        self._spill_meta(session)
        return session

    def get_session(self, token: str) -> Session:
        if not token or "/" in token or token in (".", ".."):
            raise SessionNotFound("invalid session token")
        with self._lock:
            session = self._sessions.get(token)
        if session is None:
            session = self._recover(token)
        if session is None:
            raise SessionNotFound("unknown session token")
        if self._expired(session):
            self._purge(session)
            raise SessionNotFound("session expired")
        session.touch()
        self._spill_meta(session)
        return session

    def _expired(self, session: Session) -> bool:
        return time.time() - session.last_touched > self.ttl_seconds

    def _purge(self, session: Session) -> None:
        with self._lock:
            self._sessions.pop(session.token, None)
        shutil.rmtree(session.root, ignore_errors=True)

    def _sweep_expired(self) -> None:
        with self._lock:
            stale = [s for s in self._sessions.values() if self._expired(s)]
        for session in stale:
            self._purge(session)

    # -- spill -----------------------------------------------------------

    def _spill_meta(self, session: Session) -> None:
        doc = {"createdAt": session.created_at, "lastTouched": session.last_touched}
        (session.root / "meta.json").write_text(json.dumps(doc))

    def spill_graph(self, session: Session, entry: GraphEntry) -> None:
        graphs_dir = session.root / "graphs"
        graphs_dir.mkdir(exist_ok=True)
        payload = save_diva(entry.graph, layout=entry.layout, stats=entry.stats)
        (graphs_dir / f"{entry.graph_id}.diva").write_bytes(payload)

    def spill_run(self, session: Session, entry: RunEntry) -> None:
        runs_dir = session.root / "runs"
        runs_dir.mkdir(exist_ok=True)
        doc = {
            "runId": entry.run_id,
            "graphId": entry.graph_id,
            "kind": entry.kind,
            "status": entry.status,
            "configs": [c.to_dict() for c in entry.configs],
            "seeds": entry.seeds.to_dict() if entry.seeds is not None else None,
            "error": entry.error,
            "traces": [_trace_to_doc(t) for t in entry.traces],
        }
        (runs_dir / f"{entry.run_id}.json").write_text(json.dumps(doc))

    # -- recovery ----------------------------------------------------------

    def _recover(self, token: str) -> Session | None:
        root = self.sessions_dir / token
        meta_path = root / "meta.json"
        if not meta_path.is_file():
            return None
        try:
            meta = json.loads(meta_path.read_text())
            session = Session(
                token, root,
                created_at=float(meta["createdAt"]),
                last_touched=float(meta["lastTouched"]),
            )
        except (OSError, ValueError, KeyError):
            return None
        if self._expired(session):
            self._purge(session)
            return None
        graphs_dir = root / "graphs"
        if graphs_dir.is_dir():
            for path in sorted(graphs_dir.glob("*.diva")):
                try:
                    graph, layout, stats = load_diva(path.read_bytes())
                except Exception:
                    continue
                entry = GraphEntry(
                    graph_id=path.stem, graph=graph, layout=layout, stats=stats
                )
                if entry.layout is None:
                    self.schedule_layout(session, entry)
                session.graphs[entry.graph_id] = entry
        runs_dir = root / "runs"
        if runs_dir.is_dir():
            for path in sorted(runs_dir.glob("*.json")):
                try:
                    doc = json.loads(path.read_text())
                    entry = RunEntry(
                        run_id=doc["runId"],
                        graph_id=doc["graphId"],
                        kind=doc["kind"],
                        status=doc["status"],
                        configs=tuple(
                            ModelConfig.from_dict(c) for c in doc.get("configs", [])
                        ),
                        seeds=(
                            SeedSpec.from_dict(doc["seeds"])
                            if doc.get("seeds") is not None else None
                        ),
                        traces=tuple(_trace_from_doc(t) for t in doc["traces"]),
                        error=doc.get("error"),
                    )
                except Exception:
                    continue
                if entry.status == STATUS_PENDING:
                    # The computation died with the previous process.
                    entry.status = STATUS_FAILED
                    entry.error = {"code": "InternalError",
                                   "message": "server restarted mid-run"}
                session.runs[entry.run_id] = entry
        with self._lock:
            existing = self._sessions.get(token)
            if existing is not None:
                return existing
            self._sessions[token] = session
        return session

    # -- layout jobs -------------------------------------------------------

    def schedule_layout(self, session: Session, entry: GraphEntry) -> None:
        job = LayoutJob(self.layout_params.max_ticks)
        entry.job = job

        def work() -> None:
            try:
                layout = compute_layout(
                    entry.graph, self.layout_params, on_tick=job.on_tick
                )
                with session.lock:
                    entry.layout = layout
                    entry.job = None
                self.spill_graph(session, entry)
            except Exception as exc:  # pragma: no cover - defensive
                job.error = f"{type(exc).__name__}: {exc}"
            finally:
                job.finished.set()

        thread = threading.Thread(target=work, daemon=True, name=f"layout-{entry.graph_id}")
        thread.start()

    @staticmethod
    def new_id() -> str:
        return secrets.token_hex(8)
