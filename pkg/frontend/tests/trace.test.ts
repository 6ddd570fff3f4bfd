import { describe, expect, it } from "vitest";

import { buildIdIndex, TraceError, TraceReplay } from "../src/trace";
import type { DualTraceDocument, NodeTablePage, TraceEntry } from "../src/types";
import { censusMap, histogramsEqual, loadJSON } from "./helpers";

const DOC = loadJSON<DualTraceDocument>("dual_sir_sis_trace.json");
const NODES = loadJSON<NodeTablePage>("nodes_er60.json");
const IDS = buildIdIndex(NODES.rows);

function histogram(statuses: Int8Array): Map<number, number> {
  const out = new Map<number, number>();
  for (const code of statuses) out.set(code, (out.get(code) ?? 0) + 1);
  return out;
}

describe("trace replay", () => {
  it("accumulates deltas onto an all-susceptible start", () => {
    const replay = new TraceReplay(DOC.a, IDS, 60);
    expect(replay.length).toBe(13);
    const start = replay.statusAt(0);
    expect(histogram(start).get(1)).toBe(6);
    expect(histogram(start).get(0)).toBe(54);
  });

  it("matches the trace census at every iteration of both runs", () => {
    for (const entries of [DOC.a, DOC.b]) {
      const replay = new TraceReplay(entries, IDS, 60);
      for (let t = 0; t < replay.length; t++) {
        const got = histogram(replay.statusAt(t));
        const expected = censusMap(entries[t].node_count);
        expect(histogramsEqual(got, expected)).toBe(true);
      }
    }
  });

  it("seeking backward equals a fresh forward replay", () => {
    const seeked = new TraceReplay(DOC.a, IDS, 60);
    seeked.statusAt(12);
    seeked.statusAt(7);
    const fresh = new TraceReplay(DOC.a, IDS, 60);
    expect(Array.from(seeked.statusAt(3))).toEqual(Array.from(fresh.statusAt(3)));
    expect(Array.from(seeked.assignedAt(3))).toEqual(
      Array.from(fresh.assignedAt(3)),
    );
  });

  it("clamps out-of-range iterations to the nearest end", () => {
    const replay = new TraceReplay(DOC.a, IDS, 60);
    expect(replay.statusAt(-5)).toBe(replay.statusAt(0));
    expect(replay.statusAt(99)).toBe(replay.statusAt(12));
    expect(replay.clamp(3.7)).toBe(3);
  });

  it("keeps a recovered node marked as assigned", () => {
    // in the SIS run, node "1" recovers back to code 0 at iteration 3
    const replay = new TraceReplay(DOC.b, IDS, 60);
    const idx = IDS.get("1");
    expect(idx).toBeDefined();
    expect(DOC.b[3].status["1"]).toBe(0);
    expect(replay.statusAt(3)[idx!]).toBe(0);
    expect(replay.assignedAt(3)[idx!]).toBe(1);
  });

  it("rejects non-consecutive iterations", () => {
    const entries: TraceEntry[] = [
      { iteration: 0, status: { "0": 1 }, node_count: { "0": 1, "1": 1 } },
      { iteration: 2, status: {}, node_count: { "0": 1, "1": 1 } },
    ];
    expect(() => new TraceReplay(entries, IDS, 60)).toThrow(TraceError);
    expect(() => new TraceReplay(entries, IDS, 60)).toThrow(/consecutive/);
  });

  it("rejects a status delta naming an unknown node", () => {
    const entries: TraceEntry[] = [
      { iteration: 0, status: { zz: 1 }, node_count: { "0": 59, "1": 1 } },
    ];
    expect(() => new TraceReplay(entries, IDS, 60)).toThrow(/unknown node zz/);
  });

  it("rejects an empty trace", () => {
    expect(() => new TraceReplay([], IDS, 60)).toThrow(/no entries/);
  });

  it("builds the id index from node table rows", () => {
    expect(IDS.size).toBe(60);
    expect(IDS.get("0")).toBe(0);
    expect(IDS.get("59")).toBe(59);
  });
});
