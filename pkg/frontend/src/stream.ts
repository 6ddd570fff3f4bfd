/**
 * Incremental decoder for the graph layout stream.
 *
 * The wire is newline-delimited JSON: a chunk header
 * {"seq":k,"kind":"NodeBatch"|"EdgeBatch"|"Done","total":T} followed by one
 * record per line.  Node records carry {index, x, y, degree}, edge records
 * {sourceIndex, targetIndex}, and an empty Done chunk closes the stream.
 * Sequence numbers are consecutive from zero; node indices arrive dense and
 * in order, so coordinates pack straight into typed arrays.
 */

const KIND_NODES = "NodeBatch";
const KIND_EDGES = "EdgeBatch";
const KIND_DONE = "Done";

export class StreamError extends Error {
  constructor(message: string, readonly line?: number) {
    super(message);
    this.name = "StreamError";
  }
}

export interface StreamProgress {
  chunksSeen: number;
  totalChunks: number;
  nodesSeen: number;
  edgesSeen: number;
  done: boolean;
}

export interface DecodedGraph {
  /** x0,y0,x1,y1,... in layout coordinates. */
  positions: Float32Array;
  degrees: Uint32Array;
  /** source0,target0,source1,target1,... as node indices. */
  edges: Uint32Array;
  nodeCount: number;
  edgeCount: number;
}

export class StreamDecoder {
  onChunk?: (progress: StreamProgress) => void;

  private buffer = "";
  private lineNo = 0;
  private expectSeq = 0;
  private total: number | null = null;
  private kind: string | null = null;
  private doneSeen = false;
  private xs: number[] = [];
  private ys: number[] = [];
  private degrees: number[] = [];
  private edges: number[] = [];

  /** Consume a slice of stream text; partial trailing lines are buffered. */
  feed(text: string): void {
    this.buffer += text;
    let nl: number;
    while ((nl = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, nl);
      this.buffer = this.buffer.slice(nl + 1);
      if (line.length > 0) this.consumeLine(line);
    }
  }

  progress(): StreamProgress {
    return {
      chunksSeen: this.expectSeq,
      totalChunks: this.total ?? 0,
      nodesSeen: this.xs.length,
      edgesSeen: this.edges.length / 2,
      done: this.doneSeen,
    };
  }

  /** Pack the decoded graph; throws unless the Done chunk arrived. */
  finish(): DecodedGraph {
    if (this.buffer.trim().length > 0) this.consumeLine(this.buffer.trim());
    if (!this.doneSeen) {
      throw new StreamError("stream ended before the Done chunk", this.lineNo);
    }
    if (this.total !== null && this.expectSeq !== this.total) {
      throw new StreamError(
        `stream closed after ${this.expectSeq} of ${this.total} chunks`,
        this.lineNo,
      );
    }
    const n = this.xs.length;
    const m = this.edges.length / 2;
    const positions = new Float32Array(n * 2);
    for (let i = 0; i < n; i++) {
      positions[i * 2] = this.xs[i];
      positions[i * 2 + 1] = this.ys[i];
    }
    for (let k = 0; k < this.edges.length; k++) {
      const idx = this.edges[k];
      if (idx < 0 || idx >= n) {
        throw new StreamError(`edge references node index ${idx} of ${n}`);
      }
    }
    return {
      positions,
      degrees: Uint32Array.from(this.degrees),
      edges: Uint32Array.from(this.edges),
      nodeCount: n,
      edgeCount: m,
    };
  }

  private consumeLine(line: string): void {
    this.lineNo += 1;
    let doc: Record<string, unknown>;
    try {
      doc = JSON.parse(line);
    } catch {
      throw new StreamError("stream line is not valid JSON", this.lineNo);
    }
    if (typeof doc !== "object" || doc === null) {
      throw new StreamError("stream line is not an object", this.lineNo);
    }
    if ("seq" in doc) {
      this.consumeHeader(doc);
    } else {
      this.consumeRecord(doc);
    }
  }

  private consumeHeader(doc: Record<string, unknown>): void {
    if (this.doneSeen) {
      throw new StreamError("chunk header after the Done chunk", this.lineNo);
    }
    const seq = doc.seq;
    const kind = doc.kind;
    const total = doc.total;
    if (seq !== this.expectSeq) {
      throw new StreamError(
        `chunk sequence jumped from ${this.expectSeq} to ${String(seq)}`,
        this.lineNo,
      );
    }
    if (kind !== KIND_NODES && kind !== KIND_EDGES && kind !== KIND_DONE) {
      throw new StreamError(`unknown chunk kind ${String(kind)}`, this.lineNo);
    }
    if (typeof total !== "number" || (this.total !== null && total !== this.total)) {
      throw new StreamError("chunk total missing or inconsistent", this.lineNo);
    }
    this.total = total;
    this.kind = kind;
    this.expectSeq += 1;
    if (kind === KIND_DONE) this.doneSeen = true;
    this.onChunk?.(this.progress());
  }

  private consumeRecord(doc: Record<string, unknown>): void {
    if (this.kind === null) {
      throw new StreamError("record before any chunk header", this.lineNo);
    }
    if (this.kind === KIND_DONE) {
      throw new StreamError("record after the Done chunk", this.lineNo);
    }
    if (this.kind === KIND_NODES) {
      const { index, x, y, degree } = doc as {
        index?: unknown; x?: unknown; y?: unknown; degree?: unknown;
      };
      if (
        typeof index !== "number" || typeof x !== "number" ||
        typeof y !== "number" || typeof degree !== "number"
      ) {
        throw new StreamError("malformed node record", this.lineNo);
      }
      if (index !== this.xs.length) {
        throw new StreamError(
          `node index ${index} arrived out of order (expected ${this.xs.length})`,
          this.lineNo,
        );
      }
      this.xs.push(x);
      this.ys.push(y);
      this.degrees.push(degree);
    } else {
      const { sourceIndex, targetIndex } = doc as {
        sourceIndex?: unknown; targetIndex?: unknown;
      };
      if (typeof sourceIndex !== "number" || typeof targetIndex !== "number") {
        throw new StreamError("malformed edge record", this.lineNo);
      }
      this.edges.push(sourceIndex, targetIndex);
    }
  }
}

/** One-shot decode of a complete stream. */
export function decodeStream(text: string): DecodedGraph {
  const decoder = new StreamDecoder();
  decoder.feed(text);
  return decoder.finish();
}
