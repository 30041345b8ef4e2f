// Display formatting. Every number shown comes from an API response; these
// helpers only round for the screen.

import type { RiskTriple } from "./types.js";

export function fmt(x: number | null | undefined, digits = 3): string {
  if (x === null || x === undefined) return "NA";
  return x.toFixed(digits);
}

export function fmtTriple(t: RiskTriple): string {
  return `power ${fmt(t.power)} · type S ${fmt(t.typeS)} · type M ${fmt(t.typeM)}`;
}

export function fmtSeed(seed: number | null): string {
  return seed === null ? "exact (no seed)" : `seed ${seed}`;
}
