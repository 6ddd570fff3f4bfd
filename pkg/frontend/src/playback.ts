/**
 * Timeline playback with a fixed delay between frames, 500 ms by default
 * and user adjustable.  The player owns no rendering: each tick advances
 * the ViewState one frame and invokes the redraw callback, pausing itself
 * after the final frame.  Pressing play on the final frame restarts from
 * iteration zero.
 */

import { ViewState } from "./view";

export const DEFAULT_FRAME_DELAY_MS = 500;

export class Player {
  delayMs = DEFAULT_FRAME_DELAY_MS;

  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly view: ViewState,
    private readonly onFrame: () => void,
  ) {}

  get playing(): boolean {
    return this.timer !== null;
  }

  play(): void {
    if (this.timer !== null || this.view.traceLength === 0) return;
    if (this.view.atEnd) {
      this.view.scrubTo(0);
      this.onFrame();
    }
    this.view.playing = true;
    this.schedule();
  }

  pause(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.view.playing = false;
  }

  toggle(): void {
    if (this.playing) this.pause();
    else this.play();
  }

  private schedule(): void {
    this.timer = setTimeout(() => {
      this.timer = null;
      this.view.nextFrame();
      this.onFrame();
      if (this.view.atEnd) this.pause();
      else this.schedule();
    }, this.delayMs);
  }
}
