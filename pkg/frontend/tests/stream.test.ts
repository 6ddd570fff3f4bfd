import { describe, expect, it } from "vitest";

import { decodeStream, StreamDecoder, StreamError, StreamProgress } from "../src/stream";
import { fixtureText } from "./helpers";

const STREAM = fixtureText("stream_er60.ndjson");

const TINY = [
  '{"seq":0,"kind":"NodeBatch","total":3}',
  '{"index":0,"x":0,"y":0,"degree":1}',
  '{"index":1,"x":1,"y":1,"degree":1}',
  '{"seq":1,"kind":"EdgeBatch","total":3}',
  '{"sourceIndex":0,"targetIndex":1}',
  '{"seq":2,"kind":"Done","total":3}',
].join("\n") + "\n";

describe("stream decoding", () => {
  it("decodes a served stream into packed arrays", () => {
    const graph = decodeStream(STREAM);
    expect(graph.nodeCount).toBe(60);
    expect(graph.edgeCount).toBe(143);
    expect(graph.positions).toHaveLength(120);
    expect(graph.edges).toHaveLength(286);
    // first node record of the fixture: index 0 at (16.4003, -94.4715), degree 5
    expect(graph.degrees[0]).toBe(5);
    expect(graph.positions[0]).toBeCloseTo(16.4003, 3);
    expect(graph.positions[1]).toBeCloseTo(-94.4715, 3);
    for (const idx of graph.edges) {
      expect(idx).toBeGreaterThanOrEqual(0);
      expect(idx).toBeLessThan(60);
    }
  });

  it("gives the same result fed incrementally in odd slices", () => {
    const decoder = new StreamDecoder();
    for (let i = 0; i < STREAM.length; i += 193) {
      decoder.feed(STREAM.slice(i, i + 193));
    }
    const inc = decoder.finish();
    const whole = decodeStream(STREAM);
    expect(Array.from(inc.positions)).toEqual(Array.from(whole.positions));
    expect(Array.from(inc.degrees)).toEqual(Array.from(whole.degrees));
    expect(Array.from(inc.edges)).toEqual(Array.from(whole.edges));
  });

  it("reports monotone progress and flips done on the Done chunk", () => {
    const decoder = new StreamDecoder();
    const seen: StreamProgress[] = [];
    decoder.onChunk = (p) => seen.push({ ...p });
    decoder.feed(STREAM);
    decoder.finish();
    expect(seen).toHaveLength(10);
    for (let i = 1; i < seen.length; i++) {
      expect(seen[i].chunksSeen).toBeGreaterThan(seen[i - 1].chunksSeen);
    }
    expect(seen.every((p) => p.totalChunks === 10)).toBe(true);
    expect(seen.slice(0, -1).every((p) => !p.done)).toBe(true);
    expect(seen[seen.length - 1].done).toBe(true);
    expect(seen[seen.length - 1].chunksSeen).toBe(10);
  });

  it("decodes the hand-rolled minimal stream", () => {
    const graph = decodeStream(TINY);
    expect(graph.nodeCount).toBe(2);
    expect(graph.edgeCount).toBe(1);
    expect(Array.from(graph.edges)).toEqual([0, 1]);
  });

  it("rejects a sequence gap", () => {
    const broken = TINY.replace('"seq":1', '"seq":2');
    expect(() => decodeStream(broken)).toThrow(StreamError);
    expect(() => decodeStream(broken)).toThrow(/sequence jumped/);
  });

  it("rejects a record before any header", () => {
    expect(() => decodeStream('{"index":0,"x":0,"y":0,"degree":0}\n')).toThrow(
      /before any chunk header/,
    );
  });

  it("rejects an unknown chunk kind", () => {
    const broken = TINY.replace("NodeBatch", "BlobBatch");
    expect(() => decodeStream(broken)).toThrow(/unknown chunk kind/);
  });

  it("rejects a record after the Done chunk", () => {
    const broken = TINY + '{"index":2,"x":0,"y":0,"degree":0}\n';
    expect(() => decodeStream(broken)).toThrow(/after the Done chunk/);
  });

  it("rejects a truncated stream without Done", () => {
    const lines = TINY.trimEnd().split("\n");
    const truncated = lines.slice(0, -1).join("\n") + "\n";
    expect(() => decodeStream(truncated)).toThrow(/before the Done chunk/);
  });

  it("rejects node records out of index order", () => {
    const swapped = TINY
      .replace('{"index":0,"x":0,"y":0,"degree":1}', "@A@")
      .replace('{"index":1,"x":1,"y":1,"degree":1}', '{"index":0,"x":0,"y":0,"degree":1}')
      .replace("@A@", '{"index":1,"x":1,"y":1,"degree":1}');
    expect(() => decodeStream(swapped)).toThrow(/out of order/);
  });

  it("rejects an edge pointing outside the node range", () => {
    const broken = TINY.replace('"targetIndex":1', '"targetIndex":7');
    expect(() => decodeStream(broken)).toThrow(/edge references node index 7/);
  });
});
