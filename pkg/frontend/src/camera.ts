/**
 * 2D world camera with pan, zoom about a cursor, and rotation.
 *
 * Screen mapping: world point minus center, rotated, scaled, then offset to
 * the viewport middle (pixel y grows downward).  matrix() emits the same
 * mapping as a column-major 3x3 into GL clip space for the shaders, so the
 * CPU-side picking math and the GPU transform cannot drift apart.
 */

export interface Viewport {
  width: number;
  height: number;
}

export interface CameraState {
  centerX: number;
  centerY: number;
  scale: number;
  rotation: number;
}

const MIN_SCALE = 1e-4;
const MAX_SCALE = 1e6;

export class Camera {
  centerX = 0;
  centerY = 0;
  scale = 1;
  rotation = 0;

  /** Drag the content by a screen-space delta in pixels. */
  pan(dxPx: number, dyPx: number): void {
    const c = Math.cos(this.rotation);
    const s = Math.sin(this.rotation);
    const gx = dxPx / this.scale;
    const gy = dyPx / this.scale;
    this.centerX -= c * gx + s * gy;
    this.centerY -= -s * gx + c * gy;
  }

  /** Scale by factor, keeping the world point under (px, py) fixed. */
  zoomAt(px: number, py: number, factor: number, vp: Viewport): void {
    const [wx, wy] = this.screenToWorld(px, py, vp);
    this.scale = Math.min(Math.max(this.scale * factor, MIN_SCALE), MAX_SCALE);
    const [nx, ny] = this.screenToWorld(px, py, vp);
    this.centerX += wx - nx;
    this.centerY += wy - ny;
  }

  rotateBy(radians: number): void {
    this.rotation += radians;
  }

  worldToScreen(wx: number, wy: number, vp: Viewport): [number, number] {
    const c = Math.cos(this.rotation);
    const s = Math.sin(this.rotation);
    const dx = wx - this.centerX;
    const dy = wy - this.centerY;
    return [
      vp.width / 2 + (c * dx - s * dy) * this.scale,
      vp.height / 2 + (s * dx + c * dy) * this.scale,
    ];
  }

  screenToWorld(px: number, py: number, vp: Viewport): [number, number] {
    const c = Math.cos(this.rotation);
    const s = Math.sin(this.rotation);
    const rx = (px - vp.width / 2) / this.scale;
    const ry = (py - vp.height / 2) / this.scale;
    return [c * rx + s * ry + this.centerX, -s * rx + c * ry + this.centerY];
  }

  /** Column-major 3x3 taking world coordinates to GL clip space. */
  matrix(vp: Viewport, out?: Float32Array): Float32Array {
    const m = out ?? new Float32Array(9);
    const c = Math.cos(this.rotation);
    const s = Math.sin(this.rotation);
    const kx = (2 * this.scale) / vp.width;
    const ky = (2 * this.scale) / vp.height;
    m[0] = kx * c;
    m[1] = -ky * s;
    m[2] = 0;
    m[3] = -kx * s;
    m[4] = -ky * c;
    m[5] = 0;
    m[6] = kx * (s * this.centerY - c * this.centerX);
    m[7] = ky * (s * this.centerX + c * this.centerY);
    m[8] = 1;
    return m;
  }

  snapshot(): CameraState {
    return {
      centerX: this.centerX,
      centerY: this.centerY,
      scale: this.scale,
      rotation: this.rotation,
    };
  }

  restore(state: CameraState): void {
    this.centerX = state.centerX;
    this.centerY = state.centerY;
    this.scale = state.scale;
    this.rotation = state.rotation;
  }

  equals(state: CameraState): boolean {
    return (
      this.centerX === state.centerX &&
      this.centerY === state.centerY &&
      this.scale === state.scale &&
      this.rotation === state.rotation
    );
  }
}
