/**
 * Application shell: wires the panels, canvases and timeline to the typed
 * API client and the pure view/frame/replay modules.  This is the only
 * module that touches the DOM.
 *
 * A second tab opened for dual viewing shares the session token through the
 * URL fragment, so both tabs talk to the same server-side session.
 */

import { ApiClient, ApiError } from "./api";
import { chartSVG, reportCharts } from "./charts";
import { DEFAULT_COLORS } from "./colors";
import { degreeFrame } from "./frame";
import { GraphRenderer } from "./glRenderer";
import {
  buildDualRun,
  buildSingleRun,
  fieldFromError,
  MODEL_CATALOG,
  modelSpec,
  seedsFromForm,
} from "./panels";
import { Player } from "./playback";
import { DecodedGraph } from "./stream";
import { buildIdIndex, TraceReplay } from "./trace";
import { isDualTrace, RunHandle, SeedSpec, TraceDocument } from "./types";
import { ViewMode, ViewState } from "./view";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function input(id: string): HTMLInputElement {
  return el<HTMLInputElement>(id);
}

function showError(target: HTMLElement, err: unknown): void {
  if (err instanceof ApiError) {
    target.textContent = `${err.code}: ${err.message}`;
  } else if (err instanceof Error) {
    target.textContent = err.message;
  } else {
    target.textContent = String(err);
  }
}

function hashParams(): Map<string, string> {
  const out = new Map<string, string>();
  for (const pair of window.location.hash.replace(/^#/, "").split("&")) {
    const eq = pair.indexOf("=");
    if (eq > 0) {
      out.set(pair.slice(0, eq), decodeURIComponent(pair.slice(eq + 1)));
    }
  }
  return out;
}

class App {
  private api = new ApiClient(localStorage.getItem("diva.apiBase") ?? "");
  private readonly view = new ViewState();
  private readonly player = new Player(this.view, () => {
    this.syncTimeline();
    this.scheduleDraw();
  });
  private rendererA: GraphRenderer | null = null;
  private rendererB: GraphRenderer | null = null;
  private graph: DecodedGraph | null = null;
  private graphId: string | null = null;
  private run: RunHandle | null = null;
  private traceDoc: TraceDocument | null = null;
  private idToIndex: Map<string, number> | null = null;
  private nodeIds: string[] = [];
  private dataPage = 0;
  private drawQueued = false;

  async boot(): Promise<void> {
    this.populateModelSelects();
    this.populateColorInputs();
    this.wireHeader();
    this.wireGraphPanel();
    this.wireRunPanel();
    this.wireAppearancePanel();
    this.wireStatsPanel();
    this.wireDataPanel();
    this.wireReportPanel();
    this.wireTimeline();
    this.wireCanvas(el("slot-a"), el<HTMLCanvasElement>("canvas-a"));
    this.wireCanvas(el("slot-b"), el<HTMLCanvasElement>("canvas-b"));
    window.addEventListener("resize", () => this.scheduleDraw());

    const params = hashParams();
    const shared = params.get("session");
    try {
      if (shared !== undefined && shared !== null && shared !== "") {
        this.api.resumeSession(shared);
        el("session-label").textContent = "shared session";
      } else {
        const info = await this.api.createSession();
        el("session-label").textContent =
          `session ${info.sessionId.slice(0, 8)} (ttl ${info.ttlHours}h)`;
      }
    } catch (err) {
      showError(el("graph-error"), err);
      return;
    }
    const graphId = params.get("graph");
    if (graphId) {
      await this.loadGraph(graphId);
      const runId = params.get("run");
      if (runId) await this.adoptRun(runId);
      const mode = params.get("mode");
      if (mode === "Primary" || mode === "DualSplit" || mode === "DualSingle") {
        this.applyMode(mode);
        el<HTMLSelectElement>("view-mode").value = mode;
      }
    }
  }

  // -- header --------------------------------------------------------------

  private wireHeader(): void {
    const base = input("api-base");
    base.value = this.api.baseUrl;
    base.addEventListener("change", () => {
      localStorage.setItem("diva.apiBase", base.value.trim());
      window.location.reload();
    });
  }

  // -- graph panel ---------------------------------------------------------

  private wireGraphPanel(): void {
    el("er-generate").addEventListener("click", async () => {
      const errBox = el("graph-error");
      errBox.textContent = "";
      try {
        const handle = await this.api.generateEr(
          Number(input("er-n").value),
          Number(input("er-p").value),
          Number(input("er-seed").value),
        );
        await this.afterGraphCreated(handle.graphId, handle.nodes, handle.edges);
      } catch (err) {
        showError(errBox, err);
      }
    });
    el("upload-send").addEventListener("click", async () => {
      const errBox = el("graph-error");
      errBox.textContent = "";
      const files = input("upload-file").files;
      if (files === null || files.length === 0) {
        errBox.textContent = "choose a file first";
        return;
      }
      const format = el<HTMLSelectElement>("upload-format").value;
      try {
        const handle = await this.api.uploadGraph(
          files[0],
          files[0].name,
          format === "" ? undefined : format,
        );
        await this.afterGraphCreated(handle.graphId, handle.nodes, handle.edges);
      } catch (err) {
        showError(errBox, err);
      }
    });
  }

  private async afterGraphCreated(
    graphId: string,
    nodes: number,
    edges: number,
  ): Promise<void> {
    el("graph-info").textContent = `graph ${graphId.slice(0, 8)}: ${nodes} nodes, ${edges} edges`;
    await this.loadGraph(graphId);
  }

  private async loadGraph(graphId: string): Promise<void> {
    const banner = el("stream-banner");
    const bar = el<HTMLProgressElement>("stream-progress");
    const label = el("stream-label");
    banner.classList.remove("hidden");
    bar.value = 0;
    label.textContent = "waiting for layout...";
    try {
      const graph = await this.api.streamLayout(graphId, {
        onLayoutPending: (ticks, maxTicks) => {
          label.textContent = `layout: tick ${ticks} of ${maxTicks}`;
          bar.value = maxTicks > 0 ? ticks / maxTicks : 0;
        },
        onProgress: (p) => {
          label.textContent = `streaming: chunk ${p.chunksSeen} of ${p.totalChunks}`;
          bar.value = p.totalChunks > 0 ? p.chunksSeen / p.totalChunks : 0;
          // The banner stays up until the Done chunk has arrived.
          if (p.done) banner.classList.add("hidden");
        },
      });
      this.graph = graph;
      this.graphId = graphId;
      this.run = null;
      this.traceDoc = null;
      this.idToIndex = null;
      this.nodeIds = [];
      this.view.clearTraces();
      this.view.selectedNode = null;
      this.rendererA ??= new GraphRenderer(el<HTMLCanvasElement>("canvas-a"));
      this.rendererA.setGraph(graph);
      if (this.rendererB !== null) this.rendererB.setGraph(graph);
      this.fitCamera(graph);
      el<HTMLButtonElement>("download-diva").disabled = false;
      this.refreshFrameColors();
      this.syncTimeline();
      this.scheduleDraw();
    } catch (err) {
      banner.classList.add("hidden");
      showError(el("graph-error"), err);
    }
  }

  private fitCamera(graph: DecodedGraph): void {
    let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;
    const pos = graph.positions;
    for (let i = 0; i < graph.nodeCount; i++) {
      minX = Math.min(minX, pos[i * 2]);
      maxX = Math.max(maxX, pos[i * 2]);
      minY = Math.min(minY, pos[i * 2 + 1]);
      maxY = Math.max(maxY, pos[i * 2 + 1]);
    }
    const slot = el("slot-a");
    const w = slot.clientWidth || 800;
    const h = slot.clientHeight || 600;
    const cam = this.view.camera;
    cam.centerX = (minX + maxX) / 2;
    cam.centerY = (minY + maxY) / 2;
    cam.rotation = 0;
    const spanX = Math.max(maxX - minX, 1);
    const spanY = Math.max(maxY - minY, 1);
    cam.scale = 0.9 * Math.min(w / spanX, h / spanY);
  }

  // -- run panel -----------------------------------------------------------

  private populateModelSelects(): void {
    for (const id of ["model-a", "model-b"]) {
      const select = el<HTMLSelectElement>(id);
      for (const spec of MODEL_CATALOG) {
        const opt = document.createElement("option");
        opt.value = spec.kind;
        opt.textContent = spec.label;
        select.appendChild(opt);
      }
      select.value = "SIR";
    }
    this.renderParamFields("a");
    this.renderParamFields("b");
  }

  /** Parameter fields for the chosen model, pre-filled with defaults. */
  private renderParamFields(which: "a" | "b"): void {
    const kind = el<HTMLSelectElement>(`model-${which}`).value;
    const box = el(`params-${which}`);
    box.textContent = "";
    for (const p of modelSpec(kind).params) {
      const row = document.createElement("div");
      row.className = "row";
      const label = document.createElement("label");
      label.textContent = p.label;
      label.htmlFor = `param-${which}-${p.name}`;
      const field = document.createElement("input");
      field.type = "number";
      field.id = `param-${which}-${p.name}`;
      field.dataset.param = p.name;
      field.step = "0.01";
      field.min = "0";
      field.max = "1";
      field.value = String(p.defaultValue);
      row.append(label, field);
      box.appendChild(row);
    }
  }

  private paramValues(which: "a" | "b"): Record<string, number> {
    const out: Record<string, number> = {};
    const box = el(`params-${which}`);
    for (const field of box.querySelectorAll<HTMLInputElement>("input[data-param]")) {
      out[field.dataset.param ?? ""] = Number(field.value);
    }
    return out;
  }

  private wireRunPanel(): void {
    el("model-a").addEventListener("change", () => this.renderParamFields("a"));
    el("model-b").addEventListener("change", () => this.renderParamFields("b"));
    input("dual-enable").addEventListener("change", () => {
      el("dual-section").hidden = !input("dual-enable").checked;
    });
    el("run-launch").addEventListener("click", () => void this.launchRun());
  }

  private clearFieldHighlights(): void {
    for (const field of document.querySelectorAll("input.invalid")) {
      field.classList.remove("invalid");
    }
  }

  /** Point the user at the input a service rejection named. */
  private highlightField(which: "a" | "b" | null, field: string | null): void {
    if (field === null) return;
    const scopes = which === null ? ["a", "b"] : [which];
    for (const scope of scopes) {
      const target = document.getElementById(`param-${scope}-${field}`);
      target?.classList.add("invalid");
    }
    const direct: Record<string, string> = {
      fractionInfected: "seed-percent",
      explicitSeeds: "seed-explicit",
      maxIterations: "max-iterations",
      n: "er-n",
      p: "er-p",
    };
    if (field in direct) el(direct[field]).classList.add("invalid");
  }

  private seedSpecFromForm(): SeedSpec {
    const fraction = input("seed-mode-fraction").checked;
    return seedsFromForm({
      mode: fraction ? "fraction" : "explicit",
      value: fraction ? input("seed-percent").value : input("seed-explicit").value,
    });
  }

  private async launchRun(): Promise<void> {
    if (this.graphId === null) {
      el("run-error").textContent = "load a graph first";
      return;
    }
    const errBox = el("run-error");
    const status = el("run-status");
    const button = el<HTMLButtonElement>("run-launch");
    errBox.textContent = "";
    this.clearFieldHighlights();
    button.disabled = true;
    try {
      const seeds = this.seedSpecFromForm();
      const iterations = Number(input("max-iterations").value);
      const dual = input("dual-enable").checked;
      const body = dual
        ? buildDualRun(
            {
              kind: el<HTMLSelectElement>("model-a").value,
              values: this.paramValues("a"),
              rngSeed: Number(input("rng-a").value),
            },
            {
              kind: el<HTMLSelectElement>("model-b").value,
              values: this.paramValues("b"),
              rngSeed: Number(input("rng-b").value),
            },
            seeds,
            iterations,
          )
        : buildSingleRun(
            el<HTMLSelectElement>("model-a").value,
            this.paramValues("a"),
            seeds,
            {
              maxIterations: iterations,
              rngSeed: Number(input("rng-a").value),
            },
          );
      status.textContent = "launching...";
      const handle = await this.api.startRun(this.graphId, body);
      status.textContent = `run ${handle.runId.slice(0, 8)}: ${handle.status}`;
      const done = await this.api.waitForRun(handle.runId);
      status.textContent = `run ${done.runId.slice(0, 8)}: ${done.status}`;
      if (done.status !== "Complete") {
        errBox.textContent = "run failed server-side";
        return;
      }
      await this.adoptRun(done.runId, done);
    } catch (err) {
      showError(errBox, err);
      this.highlightField(null, fieldFromError(err));
      status.textContent = "";
    } finally {
      button.disabled = false;
    }
  }

  /** Load a completed run's trace and point the timeline at it. */
  private async adoptRun(runId: string, handle?: RunHandle): Promise<void> {
    this.run = handle ?? (await this.api.runHandle(runId));
    const doc = await this.api.trace(runId);
    this.traceDoc = doc;
    const ids = await this.ensureIdIndex();
    const n = this.graph?.nodeCount ?? ids.size;
    if (isDualTrace(doc)) {
      this.view.setTraces(
        new TraceReplay(doc.a, ids, n),
        new TraceReplay(doc.b, ids, n),
      );
      this.applyMode("DualSplit");
      el<HTMLSelectElement>("view-mode").value = "DualSplit";
    } else {
      this.view.setTraces(new TraceReplay(doc, ids, n));
      this.applyMode("Primary");
      el<HTMLSelectElement>("view-mode").value = "Primary";
    }
    this.view.scrubTo(0);
    el<HTMLButtonElement>("download-trace").disabled = false;
    el<HTMLButtonElement>("report-print").disabled = true;
    el<HTMLButtonElement>("open-dual-tab").disabled = !this.view.hasDual;
    this.refreshFrameColors();
    this.syncTimeline();
    this.scheduleDraw();
  }

  private async ensureIdIndex(): Promise<Map<string, number>> {
    if (this.idToIndex !== null) return this.idToIndex;
    if (this.graphId === null) throw new Error("no graph loaded");
    const pageSize = 10_000;
    const rows: { index: number; id: string }[] = [];
    for (let page = 0; ; page++) {
      const doc = await this.api.nodePage(this.graphId, {
        page,
        pageSize,
        sort: "index",
      });
      rows.push(...doc.rows);
      if ((page + 1) * pageSize >= doc.total) break;
    }
    this.idToIndex = buildIdIndex(rows);
    this.nodeIds = new Array(rows.length);
    for (const row of rows) this.nodeIds[row.index] = row.id;
    return this.idToIndex;
  }

  // -- appearance ----------------------------------------------------------

  private populateColorInputs(): void {
    const box = el("colors");
    box.textContent = "";
    const names: [number, string][] = [
      [0, "susceptible"],
      [1, "infected"],
      [2, "removed / exposed"],
      [3, "removed (4-state)"],
      [-1, "blocked"],
    ];
    for (const [code, name] of names) {
      const row = document.createElement("div");
      row.className = "row";
      const label = document.createElement("label");
      label.textContent = `${name} (${code})`;
      const field = document.createElement("input");
      field.type = "color";
      field.value = this.view.colorMap.get(code) ?? "#e377c2";
      field.addEventListener("input", () => {
        this.view.colorMap.set(code, field.value);
        this.refreshFrameColors();
        this.scheduleDraw();
      });
      row.append(label, field);
      box.appendChild(row);
    }
  }

  private wireAppearancePanel(): void {
    input("show-edges").addEventListener("change", () => {
      const show = input("show-edges").checked;
      if (this.rendererA !== null) this.rendererA.showEdges = show;
      if (this.rendererB !== null) this.rendererB.showEdges = show;
      this.scheduleDraw();
    });
    el("appearance-reset").addEventListener("click", () => {
      this.view.colorMap.clear();
      for (const [code, hex] of DEFAULT_COLORS) this.view.colorMap.set(code, hex);
      this.populateColorInputs();
      this.refreshFrameColors();
      this.scheduleDraw();
    });
  }

  // -- statistics ----------------------------------------------------------

  private wireStatsPanel(): void {
    el("stat-fetch").addEventListener("click", async () => {
      const errBox = el("stat-error");
      const out = el("stat-result");
      errBox.textContent = "";
      if (this.graphId === null) {
        errBox.textContent = "load a graph first";
        return;
      }
      try {
        const name = el<HTMLSelectElement>("stat-name").value;
        const doc = await this.api.stat(this.graphId, name);
        const cached = doc.cached ? "cached" : "computed now";
        if (typeof doc.values === "number") {
          out.textContent = `${doc.name} = ${doc.values}\n(${cached})`;
        } else {
          const values = Object.values(doc.values);
          const mean = values.reduce((s, v) => s + v, 0) / values.length;
          out.textContent =
            `${doc.name}: per-node over ${values.length} nodes\n` +
            `min ${Math.min(...values).toFixed(4)}  ` +
            `mean ${mean.toFixed(4)}  ` +
            `max ${Math.max(...values).toFixed(4)}\n` +
            `(${cached}; sortable in the data view)`;
        }
      } catch (err) {
        showError(errBox, err);
      }
    });
  }

  // -- data view -----------------------------------------------------------

  private wireDataPanel(): void {
    el("data-prev").addEventListener("click", () => {
      this.dataPage = Math.max(0, this.dataPage - 1);
      void this.loadDataPage();
    });
    el("data-next").addEventListener("click", () => {
      this.dataPage += 1;
      void this.loadDataPage();
    });
    el("data-sort").addEventListener("change", () => {
      this.dataPage = 0;
      void this.loadDataPage();
    });
  }

  private async loadDataPage(): Promise<void> {
    const errBox = el("data-error");
    errBox.textContent = "";
    if (this.graphId === null) {
      errBox.textContent = "load a graph first";
      return;
    }
    try {
      const doc = await this.api.nodePage(this.graphId, {
        page: this.dataPage,
        pageSize: 15,
        sort: el<HTMLSelectElement>("data-sort").value,
      });
      this.dataPage = doc.page;
      el("data-page-label").textContent =
        `page ${doc.page} of ${Math.max(Math.ceil(doc.total / doc.pageSize) - 1, 0)}`;
      const table = el<HTMLTableElement>("data-table");
      table.textContent = "";
      if (doc.rows.length === 0) return;
      const columns = Object.keys(doc.rows[0]);
      const head = table.createTHead().insertRow();
      for (const c of columns) {
        const th = document.createElement("th");
        th.textContent = c;
        head.appendChild(th);
      }
      const body = table.createTBody();
      for (const row of doc.rows) {
        const tr = body.insertRow();
        tr.addEventListener("click", () => {
          this.view.selectedNode = row.index;
          this.updateContext();
          this.scheduleDraw();
        });
        for (const c of columns) {
          const td = tr.insertCell();
          const v = row[c];
          td.textContent = typeof v === "number" && !Number.isInteger(v)
            ? v.toFixed(5)
            : String(v);
        }
      }
    } catch (err) {
      showError(errBox, err);
    }
  }

  // -- report view ---------------------------------------------------------

  private wireReportPanel(): void {
    el("report-load").addEventListener("click", async () => {
      const errBox = el("report-error");
      errBox.textContent = "";
      if (this.run === null) {
        errBox.textContent = "complete a run first";
        return;
      }
      try {
        const vs = input("report-vs").value.trim();
        const doc = await this.api.report(
          this.run.runId,
          vs === "" ? undefined : vs,
        );
        const charts = reportCharts(doc, this.view.colorMap);
        const box = el("report-charts");
        box.textContent = "";
        const add = (title: string, svg: string) => {
          const h = document.createElement("h4");
          h.textContent = title;
          box.appendChild(h);
          const holder = document.createElement("div");
          holder.innerHTML = svg;
          box.appendChild(holder.firstElementChild as Element);
        };
        for (const spec of charts.trends) add(spec.title, chartSVG(spec));
        if (charts.f1 !== undefined) add(charts.f1.title, chartSVG(charts.f1));
        if (charts.commonInfected !== undefined) {
          add(charts.commonInfected.title, chartSVG(charts.commonInfected));
        }
        el<HTMLButtonElement>("report-print").disabled = false;
      } catch (err) {
        showError(errBox, err);
      }
    });
    el("report-print").addEventListener("click", () => {
      const charts = el("report-charts").innerHTML;
      const page = window.open("", "_blank");
      if (page === null) return;
      page.document.write(
        `<html><head><title>diffusion report</title></head>` +
        `<body style="font-family:sans-serif">${charts}</body></html>`,
      );
      page.document.close();
      page.print();
    });
    el("download-trace").addEventListener("click", () => {
      if (this.traceDoc === null) return;
      const blob = new Blob([JSON.stringify(this.traceDoc)], {
        type: "application/json",
      });
      this.downloadBlob(blob, "trace.json");
    });
    el("download-diva").addEventListener("click", async () => {
      if (this.graphId === null) return;
      try {
        const blob = await this.api.exportArchive(this.graphId);
        this.downloadBlob(blob, "graph.diva");
      } catch (err) {
        showError(el("report-error"), err);
      }
    });
  }

  private downloadBlob(blob: Blob, filename: string): void {
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = filename;
    a.click();
    URL.revokeObjectURL(url);
  }

  // -- timeline and modes --------------------------------------------------

  private wireTimeline(): void {
    el("tl-play").addEventListener("click", () => {
      this.player.toggle();
      this.syncTimeline();
    });
    el("tl-next").addEventListener("click", () => {
      this.view.nextFrame();
      this.refreshFrameColors();
      this.syncTimeline();
      this.scheduleDraw();
    });
    input("tl-scrub").addEventListener("input", () => {
      this.view.scrubTo(Number(input("tl-scrub").value));
      this.refreshFrameColors();
      this.syncTimeline();
      this.scheduleDraw();
    });
    input("tl-delay").addEventListener("change", () => {
      this.player.delayMs = Math.max(16, Number(input("tl-delay").value));
    });
    el<HTMLSelectElement>("view-mode").addEventListener("change", () => {
      this.applyMode(el<HTMLSelectElement>("view-mode").value as ViewMode);
    });
    el("open-dual-tab").addEventListener("click", () => {
      if (this.api.token === null || this.graphId === null || this.run === null) {
        return;
      }
      const hash = [
        `session=${encodeURIComponent(this.api.token)}`,
        `graph=${encodeURIComponent(this.graphId)}`,
        `run=${encodeURIComponent(this.run.runId)}`,
        "mode=DualSplit",
      ].join("&");
      window.open(`${window.location.pathname}#${hash}`, "_blank");
    });
  }

  private applyMode(mode: ViewMode): void {
    this.view.setMode(mode);
    const split = mode === "DualSplit" && this.view.hasDual;
    el("slot-b").classList.toggle("hidden", !split);
    if (split && this.rendererB === null) {
      this.rendererB = new GraphRenderer(el<HTMLCanvasElement>("canvas-b"));
      this.rendererB.showEdges = input("show-edges").checked;
      if (this.graph !== null) this.rendererB.setGraph(this.graph);
    }
    this.refreshFrameColors();
    this.syncTimeline();
    this.scheduleDraw();
  }

  private syncTimeline(): void {
    const scrub = input("tl-scrub");
    const len = this.view.traceLength;
    scrub.max = String(Math.max(len - 1, 0));
    scrub.value = String(this.view.currentIteration);
    el("tl-info").textContent = len === 0
      ? "no run"
      : `iteration ${this.view.currentIteration} / ${len - 1}`;
    el("tl-play").innerHTML = this.player.playing ? "&#9208;" : "&#9654;";
    this.updateContext();
  }

  private updateContext(): void {
    const box = el("context-body");
    if (this.graph === null) {
      box.textContent = "no graph loaded";
      return;
    }
    const selected = this.view.selectedNode;
    if (selected === null) {
      box.textContent =
        `${this.graph.nodeCount} nodes, ${this.graph.edgeCount} edges; ` +
        `click a node or a data row to inspect it`;
      return;
    }
    const id = this.nodeIds[selected] ?? `#${selected}`;
    const degree = this.graph.degrees[selected];
    let status = "";
    for (const { view, runLabel } of this.view.frameViews()) {
      status += `  run ${runLabel}: status ${view.statuses[selected]}\n`;
    }
    box.textContent =
      `node ${id} (index ${selected})\ndegree ${degree}\n${status}`.trimEnd();
  }

  // -- canvases ------------------------------------------------------------

  private wireCanvas(slot: HTMLElement, canvas: HTMLCanvasElement): void {
    let dragging = false;
    let rotating = false;
    let moved = 0;
    let lastX = 0;
    let lastY = 0;
    canvas.addEventListener("pointerdown", (ev) => {
      dragging = true;
      rotating = ev.altKey;
      moved = 0;
      lastX = ev.offsetX;
      lastY = ev.offsetY;
      canvas.setPointerCapture(ev.pointerId);
    });
    canvas.addEventListener("pointermove", (ev) => {
      if (!dragging) return;
      const dx = ev.offsetX - lastX;
      const dy = ev.offsetY - lastY;
      lastX = ev.offsetX;
      lastY = ev.offsetY;
      moved += Math.abs(dx) + Math.abs(dy);
      if (rotating) this.view.camera.rotateBy(dx * 0.005);
      else this.view.camera.pan(dx, dy);
      this.scheduleDraw();
    });
    canvas.addEventListener("pointerup", (ev) => {
      dragging = false;
      if (moved < 4) this.selectAt(slot, ev.offsetX, ev.offsetY);
    });
    canvas.addEventListener("wheel", (ev) => {
      ev.preventDefault();
      this.view.camera.zoomAt(
        ev.offsetX,
        ev.offsetY,
        Math.exp(-ev.deltaY * 0.0012),
        { width: slot.clientWidth, height: slot.clientHeight },
      );
      this.scheduleDraw();
    }, { passive: false });
  }

  private selectAt(slot: HTMLElement, px: number, py: number): void {
    if (this.graph === null) return;
    const vp = { width: slot.clientWidth, height: slot.clientHeight };
    const pos = this.graph.positions;
    let best = -1;
    let bestDist = 12 * 12;
    for (let i = 0; i < this.graph.nodeCount; i++) {
      const [sx, sy] = this.view.camera.worldToScreen(
        pos[i * 2],
        pos[i * 2 + 1],
        vp,
      );
      const d = (sx - px) * (sx - px) + (sy - py) * (sy - py);
      if (d < bestDist) {
        bestDist = d;
        best = i;
      }
    }
    this.view.selectedNode = best >= 0 ? best : null;
    this.updateContext();
    this.scheduleDraw();
  }

  // -- drawing -------------------------------------------------------------

  /** Recompute per-node colors for the current frame and stage them. */
  private refreshFrameColors(): void {
    if (this.graph === null || this.rendererA === null) return;
    const frames = this.view.frames();
    const overlay: string[] = [];
    if (frames.length === 0) {
      this.rendererA.setColors(degreeFrame(this.graph.degrees));
      overlay.push("degree shading (no run)");
    } else {
      this.rendererA.setColors(frames[0].colors);
      overlay.push(this.describeFrame(frames[0].runLabel, frames[0].histogram));
      if (frames.length > 1 && this.rendererB !== null) {
        this.rendererB.setColors(frames[1].colors);
        overlay.push(this.describeFrame(frames[1].runLabel, frames[1].histogram));
      }
      el("label-a").textContent = `run ${frames[0].runLabel}`;
      el("label-b").textContent = frames.length > 1 ? `run ${frames[1].runLabel}` : "";
    }
    el("debug-overlay").textContent = overlay.join("\n");
  }

  /** Debug overlay line: the histogram of what this canvas renders. */
  private describeFrame(
    runLabel: string,
    histogram: Map<number, number>,
  ): string {
    const parts = [...histogram.entries()]
      .sort((x, y) => x[0] - y[0])
      .map(([code, count]) => `${code}:${count}`);
    return `run ${runLabel} rendered {${parts.join(" ")}}`;
  }

  private scheduleDraw(): void {
    if (this.drawQueued) return;
    this.drawQueued = true;
    requestAnimationFrame(() => {
      this.drawQueued = false;
      if (this.rendererA !== null) this.rendererA.draw(this.view.camera);
      if (
        this.rendererB !== null &&
        !el("slot-b").classList.contains("hidden")
      ) {
        this.rendererB.draw(this.view.camera);
      }
    });
  }
}

new App().boot().catch((err) => {
  console.error("boot failed", err);
});
