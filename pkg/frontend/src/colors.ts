/** Status colors and pre-run degree shading. */

export type Rgb = [number, number, number];

/**
 * Default status palette, user-editable per code from the appearance panel.
 * Codes 2 and 3 swap meaning for the four-state models (2 exposed,
 * 3 removed); the map stays keyed by code and the user recolors at will.
 */
export const DEFAULT_COLORS: ReadonlyMap<number, string> = new Map([
  [0, "#2ca02c"],
  [1, "#d62728"],
  [2, "#1f77b4"],
  [3, "#9467bd"],
  [-1, "#7f7f7f"],
]);

/** Codes a custom rule set may introduce beyond the palette. */
export const FALLBACK_COLOR = "#e377c2";

const SHADE_LIGHT = 0.82;
const SHADE_DARK = 0.1;

export function parseHexColor(hex: string): Rgb {
  const m = /^#?([0-9a-fA-F]{6})$/.exec(hex.trim());
  if (!m) throw new Error(`not a #rrggbb color: ${hex}`);
  const v = parseInt(m[1], 16);
  return [((v >> 16) & 0xff) / 255, ((v >> 8) & 0xff) / 255, (v & 0xff) / 255];
}

export function rgbToHex([r, g, b]: Rgb): string {
  const c = (x: number) =>
    Math.round(Math.min(Math.max(x, 0), 1) * 255).toString(16).padStart(2, "0");
  return `#${c(r)}${c(g)}${c(b)}`;
}

/**
 * Grayscale shade for a node before any run is loaded: darker means better
 * connected.  The ramp is logarithmic because observed degree distributions
 * are heavy tailed; a linear ramp would leave everything but the hubs at
 * the light end of the scale.
 */
export function degreeShade(degree: number, maxDegree: number): Rgb {
  const span = Math.log1p(Math.max(maxDegree, 1));
  const t = span > 0 ? Math.log1p(Math.max(degree, 0)) / span : 0;
  const v = SHADE_LIGHT + (SHADE_DARK - SHADE_LIGHT) * Math.min(t, 1);
  return [v, v, v];
}
