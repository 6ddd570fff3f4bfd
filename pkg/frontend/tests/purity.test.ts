/**
 * Frame purity invariant: at any iteration, the class histogram of what a
 * canvas renders equals the trace's own census for that iteration.
 *
 * The scenario is the dual SIR vs SIS comparison on a streamed 60-node
 * graph, both runs produced by the service and captured verbatim as
 * fixtures.  The histogram comes from the renderer's debug hook
 * (ViewState.frames), which counts the exact status array the color buffer
 * is filled from; the expected values come from the trace document, an
 * independent path.
 */

import { describe, expect, it } from "vitest";

import { decodeStream } from "../src/stream";
import { buildIdIndex, TraceReplay } from "../src/trace";
import type { DualTraceDocument, NodeTablePage } from "../src/types";
import { ViewState } from "../src/view";
import { censusMap, fixtureText, histogramsEqual, loadJSON, verdict } from "./helpers";

const SAMPLED_ITERATIONS = [0, 3, 6, 9, 12];

describe("frame purity", () => {
  it("matches rendered class histograms to the trace census", () => {
    const graph = decodeStream(fixtureText("stream_er60.ndjson"));
    const nodes = loadJSON<NodeTablePage>("nodes_er60.json");
    const doc = loadJSON<DualTraceDocument>("dual_sir_sis_trace.json");
    const ids = buildIdIndex(nodes.rows);

    const view = new ViewState();
    view.setTraces(
      new TraceReplay(doc.a, ids, graph.nodeCount),
      new TraceReplay(doc.b, ids, graph.nodeCount),
    );
    view.setMode("DualSplit");

    const failures: string[] = [];
    let checks = 0;
    for (const t of SAMPLED_ITERATIONS) {
      view.scrubTo(t);
      const frames = view.frames();
      expect(frames).toHaveLength(2);
      const expected = [doc.a[t].node_count, doc.b[t].node_count];
      frames.forEach((frame, canvas) => {
        checks += 1;
        const want = censusMap(expected[canvas]);
        if (!histogramsEqual(frame.histogram, want)) {
          failures.push(
            `iteration ${t} canvas ${frame.runLabel}: rendered ` +
              `${JSON.stringify([...frame.histogram])} vs census ` +
              `${JSON.stringify([...want])}`,
          );
        }
        // the same status array fills the color buffer: 3 floats per node
        expect(frame.colors).toHaveLength(graph.nodeCount * 3);
      });
    }

    const ok = failures.length === 0 && checks === SAMPLED_ITERATIONS.length * 2;
    verdict(
      "frame_purity",
      ok,
      `${checks} histograms over iterations ${SAMPLED_ITERATIONS.join(",")}, ` +
        `dual SIR/SIS on ${graph.nodeCount} nodes`,
    );
    expect(failures).toEqual([]);
    expect(checks).toBe(10);
  });

  it("keeps the merged dual-single canvas covering every node", () => {
    const nodes = loadJSON<NodeTablePage>("nodes_er60.json");
    const doc = loadJSON<DualTraceDocument>("dual_sir_sis_trace.json");
    const ids = buildIdIndex(nodes.rows);
    const view = new ViewState();
    view.setTraces(new TraceReplay(doc.a, ids, 60), new TraceReplay(doc.b, ids, 60));
    view.setMode("DualSingle");
    for (const t of SAMPLED_ITERATIONS) {
      view.scrubTo(t);
      const [frame] = view.frames();
      let total = 0;
      for (const count of frame.histogram.values()) total += count;
      expect(total).toBe(60);
    }
  });
});
