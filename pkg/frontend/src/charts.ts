/**
 * Report charts as pure data and SVG strings, so the report panel and the
 * printable report render identically and tests can assert on structure.
 *
 * A comparison report yields three chart groups: the per-model class
 * trends, F1 overlap per iteration, and the common infected count per
 * iteration.  A single-model report yields only its trend chart.
 */

import { DEFAULT_COLORS, FALLBACK_COLOR } from "./colors";
import type { ComparisonBlock, ReportDocument } from "./types";

export interface ChartSeries {
  label: string;
  color: string;
  values: number[];
}

export interface ChartSpec {
  title: string;
  yLabel: string;
  /** Fixed y-axis top, e.g. 1 for F1 scores; omitted means data maximum. */
  yMax?: number;
  series: ChartSeries[];
}

export interface ReportCharts {
  trends: ChartSpec[];
  f1?: ChartSpec;
  commonInfected?: ChartSpec;
}

const F1_COLOR = "#ff7f0e";
const COMMON_COLOR = "#17becf";

const FOUR_STATE_KINDS = new Set(["SEIR", "SEIS"]);

/** Human name for a status code under the given model kind. */
export function classLabel(kind: string, code: number): string {
  if (code === -1) return "blocked";
  if (FOUR_STATE_KINDS.has(kind)) {
    const names: Record<number, string> = {
      0: "susceptible", 1: "infected", 2: "exposed", 3: "removed",
    };
    return names[code] ?? `class ${code}`;
  }
  const names: Record<number, string> = {
    0: "susceptible", 1: "infected", 2: "removed",
  };
  return names[code] ?? `class ${code}`;
}

export function reportCharts(
  report: ReportDocument,
  colorMap: ReadonlyMap<number, string> = DEFAULT_COLORS,
): ReportCharts {
  const trends = report.models.map((model) => {
    const codes = Object.keys(model.series).map(Number).sort((x, y) => x - y);
    return {
      title: `run ${model.label}: ${model.kind} class trends`,
      yLabel: "nodes",
      series: codes.map((code) => ({
        label: classLabel(model.kind, code),
        color: colorMap.get(code) ?? FALLBACK_COLOR,
        values: model.series[String(code)],
      })),
    };
  });
  const out: ReportCharts = { trends };
  const cmp: ComparisonBlock | undefined = report.comparison;
  if (cmp !== undefined) {
    out.f1 = {
      title: "infected-set F1 per iteration",
      yLabel: "F1",
      yMax: 1,
      series: [{ label: "F1", color: F1_COLOR, values: cmp.f1PerIteration }],
    };
    out.commonInfected = {
      title: "common infected per iteration",
      yLabel: "nodes",
      series: [{
        label: "common infected",
        color: COMMON_COLOR,
        values: cmp.commonInfectedPerIteration,
      }],
    };
  }
  return out;
}

const MARGIN = { top: 28, right: 14, bottom: 26, left: 44 };

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Render one chart to a standalone SVG string. */
export function chartSVG(spec: ChartSpec, width = 520, height = 240): string {
  const innerW = width - MARGIN.left - MARGIN.right;
  const innerH = height - MARGIN.top - MARGIN.bottom;
  const length = Math.max(...spec.series.map((s) => s.values.length), 1);
  const dataMax = Math.max(...spec.series.flatMap((s) => s.values), 0);
  const yMax = spec.yMax ?? (dataMax > 0 ? dataMax : 1);
  const x = (i: number) =>
    MARGIN.left + (length > 1 ? (i / (length - 1)) * innerW : innerW / 2);
  const y = (v: number) => MARGIN.top + innerH - (v / yMax) * innerH;

  const lines = spec.series.map((s) => {
    const points = s.values
      .map((v, i) => `${x(i).toFixed(1)},${y(v).toFixed(1)}`)
      .join(" ");
    return `<polyline fill="none" stroke="${s.color}" stroke-width="1.6" points="${points}"/>`;
  });
  const legend = spec.series.map((s, k) => {
    const lx = MARGIN.left + k * 130;
    return (
      `<rect x="${lx}" y="6" width="10" height="10" fill="${s.color}"/>` +
      `<text x="${lx + 14}" y="15" font-size="11" fill="#c8ccd4">${esc(s.label)}</text>`
    );
  });
  const axisColor = "#5a5f6a";
  const textColor = "#c8ccd4";
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}" role="img" aria-label="${esc(spec.title)}">`,
    `<title>${esc(spec.title)}</title>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top}" x2="${MARGIN.left}" y2="${MARGIN.top + innerH}" stroke="${axisColor}"/>`,
    `<line x1="${MARGIN.left}" y1="${MARGIN.top + innerH}" x2="${MARGIN.left + innerW}" y2="${MARGIN.top + innerH}" stroke="${axisColor}"/>`,
    `<text x="${MARGIN.left - 6}" y="${MARGIN.top + 4}" font-size="10" text-anchor="end" fill="${textColor}">${yMax}</text>`,
    `<text x="${MARGIN.left - 6}" y="${MARGIN.top + innerH + 4}" font-size="10" text-anchor="end" fill="${textColor}">0</text>`,
    `<text x="${MARGIN.left + innerW}" y="${MARGIN.top + innerH + 16}" font-size="10" text-anchor="end" fill="${textColor}">iteration ${length - 1}</text>`,
    `<text x="${MARGIN.left - 34}" y="${MARGIN.top + innerH / 2}" font-size="10" fill="${textColor}" transform="rotate(-90 ${MARGIN.left - 34} ${MARGIN.top + innerH / 2})" text-anchor="middle">${esc(spec.yLabel)}</text>`,
    ...legend,
    ...lines,
    `</svg>`,
  ].join("");
}
