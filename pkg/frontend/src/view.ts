/**
 * ViewState: everything the canvases need to draw one moment of the app.
 *
 * One Camera and one iteration counter live here regardless of mode, so
 * switching between Primary, DualSplit and DualSingle cannot move the
 * viewpoint or the timeline: setMode touches the mode field and nothing
 * else.  frames() resolves the per-canvas statuses for the current mode;
 * rendering owns no diffusion state of its own.
 */

import { Camera } from "./camera";
import { DEFAULT_COLORS } from "./colors";
import { classFrame, FrameView, mergeDualSingle, RenderedFrame } from "./frame";
import { TraceReplay } from "./trace";

export type ViewMode = "Primary" | "DualSplit" | "DualSingle";

export interface CanvasFrame extends RenderedFrame {
  /** Which run(s) this canvas shows: "a", "b", or "a+b". */
  runLabel: string;
}

export class ViewState {
  mode: ViewMode = "Primary";
  playing = false;
  selectedNode: number | null = null;
  readonly camera = new Camera();
  readonly colorMap: Map<number, string> = new Map(DEFAULT_COLORS);

  private iteration = 0;
  private replayA: TraceReplay | null = null;
  private replayB: TraceReplay | null = null;

  get currentIteration(): number {
    return this.iteration;
  }

  /** Longest loaded trace; zero when no run is loaded. */
  get traceLength(): number {
    return Math.max(this.replayA?.length ?? 0, this.replayB?.length ?? 0);
  }

  get hasRun(): boolean {
    return this.replayA !== null;
  }

  get hasDual(): boolean {
    return this.replayB !== null;
  }

  runA(): TraceReplay | null {
    return this.replayA;
  }

  runB(): TraceReplay | null {
    return this.replayB;
  }

  setTraces(a: TraceReplay, b: TraceReplay | null = null): void {
    this.replayA = a;
    this.replayB = b;
    this.iteration = this.clampIteration(this.iteration);
  }

  clearTraces(): void {
    this.replayA = null;
    this.replayB = null;
    this.iteration = 0;
  }

  /** Jump the timeline; out-of-range targets clamp to the nearest end. */
  scrubTo(t: number): void {
    this.iteration = this.clampIteration(t);
  }

  /** Advance one frame; the final frame holds. */
  nextFrame(): void {
    this.iteration = this.clampIteration(this.iteration + 1);
  }

  get atEnd(): boolean {
    return this.traceLength === 0 || this.iteration === this.traceLength - 1;
  }

  /** Change the view mode, preserving currentIteration and camera. */
  setMode(mode: ViewMode): void {
    this.mode = mode;
  }

  /**
   * Status arrays per canvas for the current mode and iteration.  A trace
   * shorter than the timeline holds its final frame, which is a fixed point
   * by construction of early termination.
   */
  frameViews(): { view: FrameView; runLabel: string }[] {
    const a = this.replayA;
    if (a === null) return [];
    const frameOf = (r: TraceReplay): FrameView => ({
      statuses: r.statusAt(this.iteration),
      assigned: r.assignedAt(this.iteration),
    });
    const b = this.replayB;
    if (this.mode === "DualSplit" && b !== null) {
      return [
        { view: frameOf(a), runLabel: "a" },
        { view: frameOf(b), runLabel: "b" },
      ];
    }
    if (this.mode === "DualSingle" && b !== null) {
      return [{ view: mergeDualSingle(frameOf(a), frameOf(b)), runLabel: "a+b" }];
    }
    return [{ view: frameOf(a), runLabel: "a" }];
  }

  /** Rendered colors and class histograms, one entry per canvas. */
  frames(): CanvasFrame[] {
    return this.frameViews().map(({ view, runLabel }) => ({
      ...classFrame(view.statuses, this.colorMap),
      runLabel,
    }));
  }

  private clampIteration(t: number): number {
    const len = this.traceLength;
    if (len === 0) return 0;
    return Math.min(Math.max(Math.trunc(t), 0), len - 1);
  }
}
