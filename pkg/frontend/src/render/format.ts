/** Display formatting. Raw engine values always travel alongside the
 * formatted text in data-* attributes, so rounding here never feeds back
 * into behavior. */

export function fmtPercent(fraction: number): string {
  return `${(fraction * 100).toFixed(2).replace(/\.?0+$/, '')}%`;
}

export function fmtKg(value: number): string {
  return `${value.toFixed(1)} kg`;
}

export function fmtEur(value: number): string {
  return `${value.toFixed(2)} EUR`;
}

export function fmtHours(value: number): string {
  return `${value.toFixed(1)} h`;
}

export function fmtKm(value: number): string {
  return `${value.toFixed(0)} km`;
}

export function fmtScore(value: number): string {
  return value.toFixed(4);
}

export function median(values: number[]): number {
  if (values.length === 0) {
    throw new Error('median of an empty list');
  }
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 === 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}
