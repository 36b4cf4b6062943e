// Display formatting. Scores and ratios render at 2 decimals to match the
// CLI tables; tooltips carry the untouched full-precision wire value.

import type { WireNumber } from "./types.js";

export const INFEASIBLE_MARKER = "infeasible";

export function fmt2(value: number): string {
  return value.toFixed(2);
}

export function fmtRatio(value: WireNumber): string {
  if (value === "inf" || !Number.isFinite(value)) {
    return INFEASIBLE_MARKER;
  }
  return fmt2(value);
}

export function fmtMoney(value: number): string {
  return value.toFixed(2);
}

/** Full precision for tooltips: the wire value, untouched. */
export function fmtFull(value: WireNumber): string {
  return value === "inf" ? "inf" : String(value);
}

export function componentLabel(attribute: string, domain: string): string {
  return `${attribute}/${domain}`;
}
