/**
 * Frame reconstruction from iteration traces.
 *
 * A trace entry carries only the delta for its iteration, so the frame at
 * iteration t is the cumulative application of deltas 0..t onto an
 * all-susceptible start.  Frames are materialized once at load time; seeking
 * backwards therefore returns byte-identical state to a fresh forward
 * replay.  The census in each entry's node_count is kept verbatim as the
 * authority that rendered frames are checked against.
 */

import type { TraceEntry } from "./types";

export const SUSCEPTIBLE = 0;

export class TraceError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "TraceError";
  }
}

/** Node id -> dense index, as reported by the node table. */
export function buildIdIndex(
  rows: Iterable<{ index: number; id: string }>,
): Map<string, number> {
  const map = new Map<string, number>();
  for (const row of rows) map.set(row.id, row.index);
  return map;
}

export class TraceReplay {
  readonly length: number;
  readonly nodeCount: number;

  /** Status code per node, one array per iteration.  Codes fit in int8. */
  private readonly frames: Int8Array[] = [];
  /** 1 where some delta at iteration <= t has touched the node. */
  private readonly assignedMasks: Uint8Array[] = [];
  private readonly censuses: Map<number, number>[] = [];

  constructor(
    entries: readonly TraceEntry[],
    idToIndex: ReadonlyMap<string, number>,
    nodeCount: number,
  ) {
    if (entries.length === 0) throw new TraceError("trace has no entries");
    this.length = entries.length;
    this.nodeCount = nodeCount;
    let statuses = new Int8Array(nodeCount);
    let assigned = new Uint8Array(nodeCount);
    for (let t = 0; t < entries.length; t++) {
      const entry = entries[t];
      if (entry.iteration !== t) {
        throw new TraceError(
          `trace iterations are not consecutive at ${entry.iteration}`,
        );
      }
      statuses = statuses.slice();
      assigned = assigned.slice();
      for (const [id, code] of Object.entries(entry.status)) {
        const index = idToIndex.get(id);
        if (index === undefined) {
          throw new TraceError(`trace references unknown node ${id}`);
        }
        statuses[index] = code;
        assigned[index] = 1;
      }
      this.frames.push(statuses);
      this.assignedMasks.push(assigned);
      const census = new Map<number, number>();
      for (const [codeStr, count] of Object.entries(entry.node_count)) {
        census.set(Number(codeStr), count);
      }
      this.censuses.push(census);
    }
  }

  clamp(t: number): number {
    return Math.min(Math.max(Math.trunc(t), 0), this.length - 1);
  }

  /** Cumulative statuses at iteration t, clamped into range. */
  statusAt(t: number): Int8Array {
    return this.frames[this.clamp(t)];
  }

  assignedAt(t: number): Uint8Array {
    return this.assignedMasks[this.clamp(t)];
  }

  /** The census the trace itself reports for iteration t. */
  censusAt(t: number): ReadonlyMap<number, number> {
    return this.censuses[this.clamp(t)];
  }
}
