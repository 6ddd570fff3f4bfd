/**
 * Panel logic that needs no DOM: the model catalog with parameter defaults,
 * run request assembly, and mapping a service error back to the offending
 * form field.  main.ts renders these; tests drive them directly.
 *
 * Parameter names and domains mirror the service's validation surface, and
 * every probability lives in [0, 1].  Client-side checks exist only for
 * immediate feedback; the service stays the authority.
 */

import { ApiError } from "./api";
import type { ModelConfigBody, RunBody, SeedSpec } from "./types";

export interface ParamSpec {
  name: string;
  label: string;
  defaultValue: number;
}

export interface ModelSpec {
  kind: string;
  label: string;
  params: ParamSpec[];
}

export const MODEL_CATALOG: readonly ModelSpec[] = [
  {
    kind: "SI",
    label: "SI",
    params: [{ name: "beta", label: "infection rate beta", defaultValue: 0.05 }],
  },
  {
    kind: "SIR",
    label: "SIR",
    params: [
      { name: "beta", label: "infection rate beta", defaultValue: 0.05 },
      { name: "gamma", label: "removal rate gamma", defaultValue: 0.1 },
    ],
  },
  {
    kind: "SIS",
    label: "SIS",
    params: [
      { name: "beta", label: "infection rate beta", defaultValue: 0.05 },
      { name: "lambda", label: "recovery rate lambda", defaultValue: 0.1 },
    ],
  },
  {
    kind: "SEIS",
    label: "SEIS",
    params: [
      { name: "alpha", label: "activation rate alpha", defaultValue: 0.2 },
      { name: "beta", label: "infection rate beta", defaultValue: 0.05 },
      { name: "lambda", label: "recovery rate lambda", defaultValue: 0.1 },
    ],
  },
  {
    kind: "SEIR",
    label: "SEIR",
    params: [
      { name: "alpha", label: "activation rate alpha", defaultValue: 0.2 },
      { name: "beta", label: "infection rate beta", defaultValue: 0.05 },
      { name: "gamma", label: "removal rate gamma", defaultValue: 0.1 },
    ],
  },
  {
    kind: "Threshold",
    label: "Threshold",
    params: [
      { name: "nodeThreshold", label: "node threshold", defaultValue: 0.1 },
    ],
  },
  {
    kind: "GeneralizedThreshold",
    label: "Generalized threshold",
    params: [
      { name: "tau", label: "profile width tau", defaultValue: 0.1 },
      { name: "mu", label: "profile center mu", defaultValue: 0.1 },
      { name: "nodeThreshold", label: "node threshold", defaultValue: 0.1 },
    ],
  },
  {
    kind: "Profile",
    label: "Profile",
    params: [
      { name: "blockedFraction", label: "blocked fraction", defaultValue: 0.1 },
      { name: "adopterRate", label: "adopter rate", defaultValue: 0.05 },
      { name: "profile", label: "profile", defaultValue: 0.1 },
    ],
  },
  {
    kind: "ProfileThreshold",
    label: "Profile threshold",
    params: [
      { name: "blockedFraction", label: "blocked fraction", defaultValue: 0.1 },
      { name: "adopterRate", label: "adopter rate", defaultValue: 0.05 },
      { name: "profile", label: "profile", defaultValue: 0.1 },
      { name: "nodeThreshold", label: "node threshold", defaultValue: 0.1 },
    ],
  },
  {
    kind: "KerteszThreshold",
    label: "Kertesz threshold",
    params: [
      { name: "adopterRate", label: "adopter rate", defaultValue: 0.05 },
      { name: "blockedFraction", label: "blocked fraction", defaultValue: 0.1 },
      { name: "nodeThreshold", label: "node threshold", defaultValue: 0.1 },
    ],
  },
  {
    kind: "IndependentCascades",
    label: "Independent cascades",
    params: [
      { name: "edgeThreshold", label: "edge threshold", defaultValue: 0.1 },
    ],
  },
];

export function modelSpec(kind: string): ModelSpec {
  const spec = MODEL_CATALOG.find((m) => m.kind === kind);
  if (spec === undefined) throw new Error(`unknown model kind ${kind}`);
  return spec;
}

export interface ConfigOptions {
  maxIterations?: number;
  rngSeed?: number;
}

/** Assemble a config body, checking params against the catalog. */
export function buildConfig(
  kind: string,
  values: Record<string, number>,
  options: ConfigOptions = {},
): ModelConfigBody {
  const spec = modelSpec(kind);
  const params: Record<string, number> = {};
  for (const p of spec.params) {
    const v = values[p.name];
    if (v === undefined || Number.isNaN(v)) {
      throw new Error(`missing value for ${p.name}`);
    }
    if (v < 0 || v > 1) {
      throw new Error(`${p.name} must lie in [0, 1]`);
    }
    params[p.name] = v;
  }
  for (const name of Object.keys(values)) {
    if (!spec.params.some((p) => p.name === name)) {
      throw new Error(`${kind} takes no parameter ${name}`);
    }
  }
  const config: ModelConfigBody = { kind, params };
  if (options.maxIterations !== undefined) {
    config.maxIterations = options.maxIterations;
  }
  if (options.rngSeed !== undefined) config.rngSeed = options.rngSeed;
  return config;
}

/** "0.1" percent, as typed by the user, becomes the fraction 0.001. */
export function percentToFraction(text: string): number {
  const v = Number(text);
  if (!Number.isFinite(v)) throw new Error(`not a number: ${text}`);
  if (v <= 0 || v > 100) {
    throw new Error("initially infected percentage must lie in (0, 100]");
  }
  return v / 100;
}

export interface SeedFormInput {
  mode: "fraction" | "explicit";
  /** Percentage text for fraction mode, comma-separated ids otherwise. */
  value: string;
}

export function seedsFromForm(input: SeedFormInput): SeedSpec {
  if (input.mode === "fraction") {
    return { fractionInfected: percentToFraction(input.value) };
  }
  const ids = input.value
    .split(",")
    .map((s) => s.trim())
    .filter((s) => s.length > 0);
  if (ids.length === 0) throw new Error("no seed nodes given");
  return { explicitSeeds: ids };
}

export function buildSingleRun(
  kind: string,
  values: Record<string, number>,
  seeds: SeedSpec,
  options: ConfigOptions = {},
): RunBody {
  return { config: buildConfig(kind, values, options), seeds };
}

export function buildDualRun(
  a: { kind: string; values: Record<string, number>; rngSeed?: number },
  b: { kind: string; values: Record<string, number>; rngSeed?: number },
  seeds: SeedSpec,
  maxIterations: number,
): RunBody {
  return {
    dual: [
      buildConfig(a.kind, a.values, { rngSeed: a.rngSeed }),
      buildConfig(b.kind, b.values, { rngSeed: b.rngSeed }),
    ],
    seeds,
    maxIterations,
  };
}

/** The form field a service rejection points at, when it names one. */
export function fieldFromError(err: unknown): string | null {
  if (err instanceof ApiError) return err.field;
  return null;
}
