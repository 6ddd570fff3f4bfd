import { readFileSync } from "node:fs";

export function fixtureText(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf8");
}

export function loadJSON<T>(name: string): T {
  return JSON.parse(fixtureText(name)) as T;
}

/** Per-criterion verdict line, greppable in CI output. */
export function verdict(name: string, ok: boolean, detail: string): void {
  console.log(`ACCEPTANCE ${name}: ${ok ? "PASS" : "FAIL"} (${detail})`);
}

/** Census map from a trace entry's node_count, zero counts dropped. */
export function censusMap(nodeCount: Record<string, number>): Map<number, number> {
  const out = new Map<number, number>();
  for (const [code, count] of Object.entries(nodeCount)) {
    if (count > 0) out.set(Number(code), count);
  }
  return out;
}

export function histogramsEqual(
  a: ReadonlyMap<number, number>,
  b: ReadonlyMap<number, number>,
): boolean {
  if (a.size !== b.size) return false;
  for (const [code, count] of a) {
    if (b.get(code) !== count) return false;
  }
  return true;
}
