import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";
import { isDualTrace } from "../src/types";
import { fixtureText } from "./helpers";

interface RecordedCall {
  url: string;
  init?: RequestInit;
}

/** Scripted fetch stub: responses are consumed in order. */
function fakeFetch(script: (() => Response)[]) {
  const calls: RecordedCall[] = [];
  const impl = (async (input: RequestInfo | URL, init?: RequestInit) => {
    calls.push({ url: String(input), init });
    const next = script.shift();
    if (next === undefined) throw new Error("fetch called past the script");
    return next();
  }) as typeof fetch;
  return { calls, impl };
}

function json(status: number, body: unknown): () => Response {
  return () =>
    new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
}

describe("api client", () => {
  it("creates a session and sends its bearer token afterwards", async () => {
    const { calls, impl } = fakeFetch([
      json(201, { sessionId: "tok-12345", ttlHours: 24 }),
      json(200, { name: "density", scope: "Global", values: 0.1, computedAt: 1, cached: false }),
    ]);
    const client = new ApiClient("http://svc", impl);
    const info = await client.createSession();
    expect(info.ttlHours).toBe(24);
    expect(client.token).toBe("tok-12345");
    await client.stat("g1", "density");
    expect(calls[1].url).toBe("http://svc/api/v1/graphs/g1/stats/density");
    const headers = calls[1].init?.headers as Record<string, string>;
    expect(headers["Authorization"]).toBe("Bearer tok-12345");
  });

  it("shares one request among concurrent identical calls", async () => {
    const { calls, impl } = fakeFetch([
      json(200, { name: "density", scope: "Global", values: 0.1, computedAt: 1, cached: false }),
    ]);
    const client = new ApiClient("", impl);
    const [first, second] = await Promise.all([
      client.stat("g1", "density"),
      client.stat("g1", "density"),
    ]);
    expect(calls).toHaveLength(1);
    expect(first).toEqual(second);
  });

  it("issues separate requests for different resources", async () => {
    const { calls, impl } = fakeFetch([
      json(200, { name: "density", scope: "Global", values: 0.1, computedAt: 1, cached: false }),
      json(200, { name: "nodes", scope: "Global", values: 60, computedAt: 1, cached: false }),
    ]);
    const client = new ApiClient("", impl);
    await Promise.all([client.stat("g1", "density"), client.stat("g1", "nodes")]);
    expect(calls).toHaveLength(2);
  });

  it("fetches again once the in-flight request has settled", async () => {
    const { calls, impl } = fakeFetch([
      json(200, { name: "density", scope: "Global", values: 0.1, computedAt: 1, cached: false }),
      json(200, { name: "density", scope: "Global", values: 0.1, computedAt: 1, cached: true }),
    ]);
    const client = new ApiClient("", impl);
    await client.stat("g1", "density");
    const again = await client.stat("g1", "density");
    expect(calls).toHaveLength(2);
    expect(again.cached).toBe(true);
  });

  it("surfaces the flat error body as an ApiError", async () => {
    const { impl } = fakeFetch([
      json(400, {
        code: "InvalidConfig",
        message: "beta must lie in [0, 1]",
        field: "beta",
        value: 2.0,
      }),
    ]);
    const client = new ApiClient("", impl);
    const err = await client
      .startRun("g1", { config: { kind: "SI", params: { beta: 2 } }, seeds: {} })
      .catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    const apiErr = err as ApiError;
    expect(apiErr.code).toBe("InvalidConfig");
    expect(apiErr.status).toBe(400);
    expect(apiErr.field).toBe("beta");
    expect(apiErr.context["value"]).toBe(2.0);
    expect(apiErr.message).toBe("beta must lie in [0, 1]");
  });

  it("wraps a non-JSON error body in a status code error", async () => {
    const { impl } = fakeFetch([
      () => new Response("gateway exploded", { status: 502, statusText: "Bad Gateway" }),
    ]);
    const client = new ApiClient("", impl);
    const err = await client.stat("g1", "density").catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).code).toBe("Http502");
  });

  it("polls through LayoutPending and then decodes the stream", async () => {
    const { calls, impl } = fakeFetch([
      json(409, {
        code: "LayoutPending",
        message: "layout still computing",
        ticksDone: 42,
        maxTicks: 300,
      }),
      () => new Response(fixtureText("stream_er60.ndjson"), { status: 200 }),
    ]);
    const client = new ApiClient("", impl);
    const pending: [number, number][] = [];
    let progressCalls = 0;
    let sawDone = false;
    const graph = await client.streamLayout("g1", {
      pollMs: 1,
      onLayoutPending: (ticks, max) => pending.push([ticks, max]),
      onProgress: (p) => {
        progressCalls++;
        if (p.done) sawDone = true;
      },
    });
    expect(calls).toHaveLength(2);
    expect(pending).toEqual([[42, 300]]);
    expect(graph.nodeCount).toBe(60);
    expect(graph.edgeCount).toBe(143);
    expect(progressCalls).toBeGreaterThanOrEqual(10);
    expect(sawDone).toBe(true);
  });

  it("rethrows a non-pending stream failure immediately", async () => {
    const { calls, impl } = fakeFetch([
      json(404, { code: "GraphNotFound", message: "no such graph" }),
    ]);
    const client = new ApiClient("", impl);
    const err = await client.streamLayout("nope").catch((e: unknown) => e);
    expect((err as ApiError).code).toBe("GraphNotFound");
    expect(calls).toHaveLength(1);
  });

  it("discriminates single and dual trace documents", async () => {
    const dualDoc = { a: [], b: [] };
    const singleDoc = [{ iteration: 0, status: {}, node_count: {} }];
    const { impl } = fakeFetch([json(200, dualDoc), json(200, singleDoc)]);
    const client = new ApiClient("", impl);
    expect(isDualTrace(await client.trace("r1"))).toBe(true);
    expect(isDualTrace(await client.trace("r2"))).toBe(false);
  });

  it("builds query strings for reports and node pages", async () => {
    const { calls, impl } = fakeFetch([
      json(200, { models: [] }),
      json(200, { rows: [], page: 2, pageSize: 50, total: 0, sort: "-degree" }),
    ]);
    const client = new ApiClient("", impl);
    await client.report("r1", "r2");
    await client.nodePage("g1", { page: 2, pageSize: 50, sort: "-degree" });
    expect(calls[0].url).toBe("/api/v1/runs/r1/report?vs=r2");
    expect(calls[1].url).toBe("/api/v1/graphs/g1/nodes?page=2&pageSize=50&sort=-degree");
  });

  it("posts run bodies and raw ground-truth documents", async () => {
    const { calls, impl } = fakeFetch([
      json(201, { runId: "r1", graphId: "g1", kind: "single", status: "Complete" }),
      json(201, { runId: "r2", graphId: "g1", kind: "groundTruth", status: "Complete" }),
    ]);
    const client = new ApiClient("", impl);
    await client.startRun("g1", {
      config: { kind: "SIR", params: { beta: 0.2, gamma: 0.1 } },
      seeds: { fractionInfected: 0.1 },
    });
    const doc = [{ iteration: 0, status: { a: 1 }, node_count: { "0": 1, "1": 1 } }];
    await client.submitGroundTruth("g1", doc);
    const runBody = JSON.parse(String(calls[0].init?.body));
    expect(runBody.config.kind).toBe("SIR");
    expect(runBody.seeds.fractionInfected).toBe(0.1);
    const gtBody = JSON.parse(String(calls[1].init?.body));
    expect(gtBody).toEqual(doc);
    expect(calls[1].url).toBe("/api/v1/graphs/g1/ground-truth");
  });

  it("polls a pending run until it completes", async () => {
    const handle = (status: string) => ({
      runId: "r1", graphId: "g1", kind: "single", status,
    });
    const { calls, impl } = fakeFetch([
      json(200, handle("Pending")),
      json(200, handle("Pending")),
      json(200, handle("Complete")),
    ]);
    const client = new ApiClient("", impl);
    const done = await client.waitForRun("r1", 1);
    expect(done.status).toBe("Complete");
    expect(calls).toHaveLength(3);
  });
});
