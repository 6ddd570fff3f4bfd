/**
 * Wire shapes of the diffusion service's JSON API.
 *
 * Every interface here mirrors a documented response or request body
 * verbatim; nothing is invented client-side.  Status codes are small
 * integers: 0 susceptible, 1 infected, 2 removed (exposed for SEIR/SEIS,
 * where 3 is removed), -1 blocked.
 */

export interface SessionInfo {
  sessionId: string;
  ttlHours: number;
}

export interface GraphHandle {
  graphId: string;
  nodes: number;
  edges: number;
  directed: boolean;
  format?: string;
  parse?: Record<string, unknown>;
}

export type RunKind = "single" | "dual" | "groundTruth";
export type RunStatus = "Pending" | "Complete" | "Failed";

export interface RunHandle {
  runId: string;
  graphId: string;
  kind: RunKind;
  status: RunStatus;
}

/** One iteration of a trace: the delta this step plus the full census. */
export interface TraceEntry {
  iteration: number;
  /** Node id -> new status code, only for nodes that changed this step. */
  status: Record<string, number>;
  /** Status code (stringified) -> node count, covering every node. */
  node_count: Record<string, number>;
}

export type SingleTraceDocument = TraceEntry[];

export interface DualTraceDocument {
  a: TraceEntry[];
  b: TraceEntry[];
}

export type TraceDocument = SingleTraceDocument | DualTraceDocument;

export function isDualTrace(doc: TraceDocument): doc is DualTraceDocument {
  return !Array.isArray(doc);
}

export interface ModelSeries {
  label: string;
  kind: string;
  /** Status code (stringified) -> per-iteration node counts. */
  series: Record<string, number[]>;
}

export interface ComparisonBlock {
  f1PerIteration: number[];
  commonInfectedPerIteration: number[];
  classSeriesA: Record<string, number[]>;
  classSeriesB: Record<string, number[]>;
}

export interface ReportDocument {
  models: ModelSeries[];
  comparison?: ComparisonBlock;
}

export interface NodeRow {
  index: number;
  id: string;
  degree: number;
  [column: string]: number | string;
}

export interface NodeTablePage {
  rows: NodeRow[];
  page: number;
  pageSize: number;
  total: number;
  sort: string;
}

export interface StatDocument {
  name: string;
  scope: "Global" | "PerNode";
  values: number | Record<string, number>;
  computedAt: number;
  cached: boolean;
  meta?: Record<string, unknown>;
}

/** Exactly one of the two fields must be set. */
export interface SeedSpec {
  fractionInfected?: number;
  explicitSeeds?: string[];
}

export interface ModelConfigBody {
  kind: string;
  params: Record<string, number | Record<string, number>>;
  maxIterations?: number;
  rngSeed?: number;
  rules?: unknown;
}

export interface SingleRunBody {
  config: ModelConfigBody;
  seeds: SeedSpec;
}

export interface DualRunBody {
  dual: [ModelConfigBody, ModelConfigBody];
  seeds: SeedSpec;
  maxIterations: number;
}

export type RunBody = SingleRunBody | DualRunBody;
