/** Display rounding. The API already rounds scores to 4 decimals; the UI
 *  renders them with exactly 4 digits and does no other arithmetic. */

export function round4(value: number): number {
  return Math.round(value * 10000) / 10000;
}

export function fmtScore(value: number): string {
  return round4(value).toFixed(4);
}

export function fmtPercent(weight: number): string {
  return `${(weight * 100).toFixed(2)}%`;
}
