/**
 * Typed client for the /api/v1 surface.
 *
 * Every call resolves to the parsed response body or rejects with an
 * ApiError carrying the service's flat error shape ({code, message, plus
 * context fields at the top level}).  Calls that pass a dedup key share
 * the in-flight promise with concurrent identical calls, so a panel that
 * re-requests the same resource cannot stack requests; the typed getters
 * key themselves per resource.
 */

import { DecodedGraph, StreamDecoder, StreamProgress } from "./stream";
import type {
  GraphHandle,
  NodeTablePage,
  ReportDocument,
  RunBody,
  RunHandle,
  SessionInfo,
  StatDocument,
  TraceDocument,
  TraceEntry,
} from "./types";

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly context: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiError";
  }

  /** The offending field named by the service, when it named one. */
  get field(): string | null {
    const f = this.context["field"];
    return typeof f === "string" ? f : null;
  }
}

async function toApiError(res: Response): Promise<ApiError> {
  let body: unknown = null;
  try {
    body = await res.json();
  } catch {
    // non-JSON error body, fall through to the status line
  }
  if (typeof body === "object" && body !== null && "code" in body) {
    const { code, message, ...context } = body as Record<string, unknown>;
    return new ApiError(
      String(code),
      typeof message === "string" ? message : res.statusText,
      res.status,
      context,
    );
  }
  return new ApiError(`Http${res.status}`, res.statusText, res.status);
}

const sleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms));

export interface StreamOptions {
  onProgress?: (p: StreamProgress) => void;
  /** Called while the layout job is still running server-side. */
  onLayoutPending?: (ticksDone: number, maxTicks: number) => void;
  pollMs?: number;
  maxWaitMs?: number;
}

export interface NodePageOptions {
  page?: number;
  pageSize?: number;
  sort?: string;
}

export class ApiClient {
  token: string | null = null;

  private readonly inflight = new Map<string, Promise<unknown>>();

  constructor(
    readonly baseUrl: string = "",
    private readonly fetchImpl: typeof fetch = (...args) => fetch(...args),
  ) {}

  async createSession(): Promise<SessionInfo> {
    const info = await this.requestJSON<SessionInfo>("POST", "/api/v1/sessions");
    this.token = info.sessionId;
    return info;
  }

  /** Adopt an existing session token, e.g. one shared with a second tab. */
  resumeSession(token: string): void {
    this.token = token;
  }

  async generateEr(n: number, p: number, seed = 0): Promise<GraphHandle> {
    return this.requestJSON("POST", "/api/v1/graphs", {
      body: { er: { n, p, seed } },
    });
  }

  async uploadGraph(
    file: Blob,
    filename: string,
    format?: string,
  ): Promise<GraphHandle> {
    const form = new FormData();
    form.append("file", file, filename);
    if (format !== undefined) form.append("format", format);
    return this.requestJSON("POST", "/api/v1/graphs", { form });
  }

  /**
   * Fetch and decode the layout stream, polling through LayoutPending
   * until the server has finished the force simulation.
   */
  async streamLayout(
    graphId: string,
    options: StreamOptions = {},
  ): Promise<DecodedGraph> {
    const pollMs = options.pollMs ?? 400;
    const maxWaitMs = options.maxWaitMs ?? 120_000;
    const deadline = Date.now() + maxWaitMs;
    const path = `/api/v1/graphs/${encodeURIComponent(graphId)}/stream`;
    for (;;) {
      const res = await this.fetchImpl(this.baseUrl + path, {
        headers: this.headers(),
      });
      if (res.ok) return this.decodeBody(res, options.onProgress);
      const err = await toApiError(res);
      if (err.code !== "LayoutPending" || Date.now() + pollMs > deadline) {
        throw err;
      }
      options.onLayoutPending?.(
        Number(err.context["ticksDone"] ?? 0),
        Number(err.context["maxTicks"] ?? 0),
      );
      await sleep(pollMs);
    }
  }

  async stat(graphId: string, name: string): Promise<StatDocument> {
    const g = encodeURIComponent(graphId);
    const s = encodeURIComponent(name);
    return this.requestJSON("GET", `/api/v1/graphs/${g}/stats/${s}`, {
      dedupKey: `stat:${graphId}:${name}`,
    });
  }

  async nodePage(
    graphId: string,
    options: NodePageOptions = {},
  ): Promise<NodeTablePage> {
    const params = new URLSearchParams();
    if (options.page !== undefined) params.set("page", String(options.page));
    if (options.pageSize !== undefined) {
      params.set("pageSize", String(options.pageSize));
    }
    if (options.sort !== undefined) params.set("sort", options.sort);
    const query = params.size > 0 ? `?${params}` : "";
    const path = `/api/v1/graphs/${encodeURIComponent(graphId)}/nodes${query}`;
    return this.requestJSON("GET", path, { dedupKey: `nodes:${path}` });
  }

  async startRun(graphId: string, body: RunBody): Promise<RunHandle> {
    const g = encodeURIComponent(graphId);
    return this.requestJSON("POST", `/api/v1/graphs/${g}/runs`, { body });
  }

  async runHandle(runId: string): Promise<RunHandle> {
    const r = encodeURIComponent(runId);
    return this.requestJSON("GET", `/api/v1/runs/${r}`, {
      dedupKey: `run:${runId}`,
    });
  }

  /** Poll until the run leaves Pending; the caller inspects the outcome. */
  async waitForRun(
    runId: string,
    pollMs = 250,
    maxWaitMs = 300_000,
  ): Promise<RunHandle> {
    const deadline = Date.now() + maxWaitMs;
    for (;;) {
      const handle = await this.runHandle(runId);
      if (handle.status !== "Pending") return handle;
      if (Date.now() + pollMs > deadline) {
        throw new ApiError("ClientTimeout", `run ${runId} still pending`, 0);
      }
      await sleep(pollMs);
    }
  }

  async trace(runId: string): Promise<TraceDocument> {
    const r = encodeURIComponent(runId);
    return this.requestJSON("GET", `/api/v1/runs/${r}/trace`, {
      dedupKey: `trace:${runId}`,
    });
  }

  async report(runId: string, vs?: string): Promise<ReportDocument> {
    const r = encodeURIComponent(runId);
    const query = vs !== undefined ? `?vs=${encodeURIComponent(vs)}` : "";
    return this.requestJSON("GET", `/api/v1/runs/${r}/report${query}`, {
      dedupKey: `report:${runId}:${vs ?? ""}`,
    });
  }

  async submitGroundTruth(
    graphId: string,
    doc: TraceEntry[],
  ): Promise<RunHandle> {
    const g = encodeURIComponent(graphId);
    return this.requestJSON("POST", `/api/v1/graphs/${g}/ground-truth`, {
      body: doc,
    });
  }

  exportUrl(graphId: string): string {
    return `${this.baseUrl}/api/v1/graphs/${encodeURIComponent(graphId)}/export.diva`;
  }

  async exportArchive(graphId: string): Promise<Blob> {
    const res = await this.fetchImpl(this.exportUrl(graphId), {
      headers: this.headers(),
    });
    if (!res.ok) throw await toApiError(res);
    return res.blob();
  }

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    const h: Record<string, string> = { ...extra };
    if (this.token !== null) h["Authorization"] = `Bearer ${this.token}`;
    return h;
  }

  private async requestJSON<T>(
    method: string,
    path: string,
    options: {
      body?: unknown;
      form?: FormData;
      dedupKey?: string;
    } = {},
  ): Promise<T> {
    const { body, form, dedupKey } = options;
    if (dedupKey !== undefined) {
      const pending = this.inflight.get(dedupKey);
      if (pending !== undefined) return pending as Promise<T>;
    }
    const run = async (): Promise<T> => {
      const init: RequestInit = { method, headers: this.headers() };
      if (form !== undefined) {
        init.body = form;
      } else if (body !== undefined) {
        init.headers = this.headers({ "Content-Type": "application/json" });
        init.body = JSON.stringify(body);
      }
      const res = await this.fetchImpl(this.baseUrl + path, init);
      if (!res.ok) throw await toApiError(res);
      return res.json() as Promise<T>;
    };
    const promise = run();
    if (dedupKey !== undefined) {
      this.inflight.set(dedupKey, promise);
      promise.finally(() => this.inflight.delete(dedupKey)).catch(() => {});
    }
    return promise;
  }

  private async decodeBody(
    res: Response,
    onProgress?: (p: StreamProgress) => void,
  ): Promise<DecodedGraph> {
    const decoder = new StreamDecoder();
    if (onProgress !== undefined) decoder.onChunk = onProgress;
    const reader = res.body?.getReader();
    if (reader !== undefined) {
      const text = new TextDecoder();
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        decoder.feed(text.decode(value, { stream: true }));
      }
      decoder.feed(text.decode());
    } else {
      decoder.feed(await res.text());
    }
    const graph = decoder.finish();
    onProgress?.(decoder.progress());
    return graph;
  }
}
