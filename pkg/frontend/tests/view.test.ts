import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Player } from "../src/playback";
import { buildIdIndex, TraceReplay } from "../src/trace";
import type { DualTraceDocument, NodeTablePage, TraceEntry } from "../src/types";
import { ViewState } from "../src/view";
import { loadJSON } from "./helpers";

const DOC = loadJSON<DualTraceDocument>("dual_sir_sis_trace.json");
const NODES = loadJSON<NodeTablePage>("nodes_er60.json");
const IDS = buildIdIndex(NODES.rows);

function dualView(): ViewState {
  const view = new ViewState();
  view.setTraces(
    new TraceReplay(DOC.a, IDS, 60),
    new TraceReplay(DOC.b, IDS, 60),
  );
  return view;
}

/** Two tiny synthetic runs over a 3-node graph for precedence checks. */
function tinyDual(): ViewState {
  const ids = buildIdIndex([
    { index: 0, id: "x" },
    { index: 1, id: "y" },
    { index: 2, id: "z" },
  ]);
  const runA: TraceEntry[] = [
    { iteration: 0, status: { x: 1, z: 1 }, node_count: { "0": 1, "1": 2 } },
    { iteration: 1, status: { z: 2 }, node_count: { "0": 1, "1": 1, "2": 1 } },
  ];
  const runB: TraceEntry[] = [
    { iteration: 0, status: { y: 1, z: 1 }, node_count: { "0": 1, "1": 2 } },
    { iteration: 1, status: {}, node_count: { "0": 1, "1": 2 } },
  ];
  const view = new ViewState();
  view.setTraces(new TraceReplay(runA, ids, 3), new TraceReplay(runB, ids, 3));
  return view;
}

describe("timeline state", () => {
  it("stays at iteration 0 with no run loaded", () => {
    const view = new ViewState();
    view.scrubTo(5);
    expect(view.currentIteration).toBe(0);
    expect(view.traceLength).toBe(0);
    expect(view.frames()).toEqual([]);
  });

  it("clamps scrubbing to the trace range", () => {
    const view = dualView();
    expect(view.traceLength).toBe(13);
    view.scrubTo(99);
    expect(view.currentIteration).toBe(12);
    view.scrubTo(-4);
    expect(view.currentIteration).toBe(0);
    view.scrubTo(7.9);
    expect(view.currentIteration).toBe(7);
  });

  it("holds the final frame on nextFrame at the end", () => {
    const view = dualView();
    view.scrubTo(12);
    view.nextFrame();
    expect(view.currentIteration).toBe(12);
    expect(view.atEnd).toBe(true);
  });

  it("takes the longer run's length in a dual view", () => {
    const ids = buildIdIndex([{ index: 0, id: "x" }]);
    const long: TraceEntry[] = [0, 1, 2].map((t) => ({
      iteration: t,
      status: (t === 0 ? { x: 1 } : {}) as Record<string, number>,
      node_count: { "1": 1 },
    }));
    const short: TraceEntry[] = [
      { iteration: 0, status: { x: 1 }, node_count: { "1": 1 } },
    ];
    const view = new ViewState();
    view.setTraces(new TraceReplay(long, ids, 1), new TraceReplay(short, ids, 1));
    expect(view.traceLength).toBe(3);
    view.setMode("DualSplit");
    view.scrubTo(2);
    // the shorter run holds its final frame
    expect(view.frames()).toHaveLength(2);
    expect(view.frames()[1].histogram.get(1)).toBe(1);
  });
});

describe("view modes", () => {
  it("renders one canvas in Primary, two in DualSplit, one merged in DualSingle", () => {
    const view = dualView();
    expect(view.frames().map((f) => f.runLabel)).toEqual(["a"]);
    view.setMode("DualSplit");
    expect(view.frames().map((f) => f.runLabel)).toEqual(["a", "b"]);
    view.setMode("DualSingle");
    expect(view.frames().map((f) => f.runLabel)).toEqual(["a+b"]);
  });

  it("lets the second run's status decide the merged color", () => {
    const view = tinyDual();
    view.setMode("DualSingle");
    view.scrubTo(1);
    const [frame] = view.frameViews();
    // z is assigned by both: run A removed it (2), run B keeps it infected (1)
    expect(frame.view.statuses[2]).toBe(1);
    // x only run A touched: keeps A's status
    expect(frame.view.statuses[0]).toBe(1);
    // y only run B touched: keeps B's status
    expect(frame.view.statuses[1]).toBe(1);
  });

  it("shows a node infected in run A alone with run A's color", () => {
    const view = tinyDual();
    view.setMode("DualSingle");
    view.scrubTo(0);
    const [frame] = view.frames();
    // x: infected only in run A; the merged canvas paints it infected red
    const infectedHex = view.colorMap.get(1)!;
    const r = parseInt(infectedHex.slice(1, 3), 16) / 255;
    expect(frame.colors[0]).toBeCloseTo(r, 5);
    expect(frame.histogram.get(1)).toBe(3);
  });

  it("applies the recovered-but-assigned precedence on real data", () => {
    // node "1" is a shared seed; the SIS run recovers it to 0 at t=3 while
    // the SIR run has its own opinion.  The merged view must show run B's 0.
    const view = dualView();
    view.setMode("DualSingle");
    view.scrubTo(3);
    const idx = IDS.get("1")!;
    const [frame] = view.frameViews();
    const runB = new TraceReplay(DOC.b, IDS, 60);
    expect(frame.view.statuses[idx]).toBe(runB.statusAt(3)[idx]);
    expect(runB.statusAt(3)[idx]).toBe(0);
  });

  it("recolors frames when the palette changes", () => {
    const view = dualView();
    view.scrubTo(0);
    view.colorMap.set(1, "#000000");
    const [frame] = view.frames();
    const idx = IDS.get("1")!;
    expect(frame.colors[idx * 3]).toBe(0);
    expect(frame.colors[idx * 3 + 1]).toBe(0);
    expect(frame.colors[idx * 3 + 2]).toBe(0);
  });
});

describe("playback", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("advances one frame per delay and pauses at the end", () => {
    const view = dualView();
    let redraws = 0;
    const player = new Player(view, () => {
      redraws++;
    });
    player.play();
    expect(view.playing).toBe(true);
    vi.advanceTimersByTime(500);
    expect(view.currentIteration).toBe(1);
    vi.advanceTimersByTime(500);
    expect(view.currentIteration).toBe(2);
    view.scrubTo(11);
    vi.advanceTimersByTime(500);
    expect(view.currentIteration).toBe(12);
    expect(player.playing).toBe(false);
    expect(view.playing).toBe(false);
    expect(redraws).toBe(3);
  });

  it("honors an adjusted frame delay", () => {
    const view = dualView();
    const player = new Player(view, () => {});
    player.delayMs = 100;
    player.play();
    vi.advanceTimersByTime(99);
    expect(view.currentIteration).toBe(0);
    vi.advanceTimersByTime(1);
    expect(view.currentIteration).toBe(1);
    player.pause();
    vi.advanceTimersByTime(1000);
    expect(view.currentIteration).toBe(1);
  });

  it("restarts from the top when played at the final frame", () => {
    const view = dualView();
    const player = new Player(view, () => {});
    view.scrubTo(12);
    player.play();
    expect(view.currentIteration).toBe(0);
    vi.advanceTimersByTime(500);
    expect(view.currentIteration).toBe(1);
    player.pause();
  });
});
