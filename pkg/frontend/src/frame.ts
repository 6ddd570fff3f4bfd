/**
 * Per-frame color computation, kept free of WebGL so the exact classes a
 * canvas will show can be asserted headlessly.
 *
 * classFrame() fills the rgb buffer and, from the same status array, counts
 * the class histogram.  That histogram is the debug hook the frame purity
 * invariant checks against the trace census; it is derived from what is
 * about to be drawn, never copied out of the trace.
 */

import { degreeShade, FALLBACK_COLOR, parseHexColor, Rgb } from "./colors";

export interface FrameView {
  statuses: Int8Array;
  /** 1 where the run has explicitly assigned a status by this iteration. */
  assigned: Uint8Array;
}

export interface RenderedFrame {
  /** r,g,b per node, ready for the color attribute buffer. */
  colors: Float32Array;
  /** Status code -> node count over exactly the statuses rendered. */
  histogram: Map<number, number>;
}

/** Pre-run shading: degree-graded grayscale, log scaled. */
export function degreeFrame(
  degrees: ArrayLike<number>,
  out?: Float32Array,
): Float32Array {
  const n = degrees.length;
  const colors = out ?? new Float32Array(n * 3);
  let max = 0;
  for (let i = 0; i < n; i++) max = Math.max(max, degrees[i]);
  for (let i = 0; i < n; i++) {
    const [r, g, b] = degreeShade(degrees[i], max);
    colors[i * 3] = r;
    colors[i * 3 + 1] = g;
    colors[i * 3 + 2] = b;
  }
  return colors;
}

/** Class colors for one run frame, plus the rendered-class histogram. */
export function classFrame(
  statuses: Int8Array,
  colorMap: ReadonlyMap<number, string>,
  out?: Float32Array,
): RenderedFrame {
  const n = statuses.length;
  const colors = out ?? new Float32Array(n * 3);
  const histogram = new Map<number, number>();
  const rgbByCode = new Map<number, Rgb>();
  const fallback = parseHexColor(FALLBACK_COLOR);
  for (let i = 0; i < n; i++) {
    const code = statuses[i];
    let rgb = rgbByCode.get(code);
    if (rgb === undefined) {
      const hex = colorMap.get(code);
      rgb = hex !== undefined ? parseHexColor(hex) : fallback;
      rgbByCode.set(code, rgb);
    }
    colors[i * 3] = rgb[0];
    colors[i * 3 + 1] = rgb[1];
    colors[i * 3 + 2] = rgb[2];
    histogram.set(code, (histogram.get(code) ?? 0) + 1);
  }
  return { colors, histogram };
}

/**
 * Merge two run frames for the single-canvas dual view.  Wherever the second
 * run has assigned the node a status, that status decides the color; nodes
 * only the first run touched keep its status, and untouched nodes stay
 * susceptible.
 */
export function mergeDualSingle(
  a: FrameView,
  b: FrameView,
  out?: FrameView,
): FrameView {
  const n = a.statuses.length;
  if (b.statuses.length !== n) {
    throw new Error(`dual frames disagree on node count: ${n} vs ${b.statuses.length}`);
  }
  const statuses = out?.statuses ?? new Int8Array(n);
  const assigned = out?.assigned ?? new Uint8Array(n);
  for (let i = 0; i < n; i++) {
    statuses[i] = b.assigned[i] ? b.statuses[i] : a.statuses[i];
    assigned[i] = a.assigned[i] | b.assigned[i];
  }
  return { statuses, assigned };
}
