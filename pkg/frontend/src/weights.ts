/** Weight renormalization, mirroring the server's normalize_weights:
 *  unset or all-zero -> uniform 1/m, otherwise each divided by the sum. */

export function normalizeWeights(raw: number[] | null, m?: number): number[] {
  if (raw !== null) {
    for (const w of raw) {
      if (w < 0) throw new Error("weights must be non-negative");
    }
  }
  if (raw === null || raw.length === 0 || raw.every((w) => w === 0)) {
    const count = m ?? (raw ? raw.length : 0);
    if (!count) throw new Error("cannot default weights without a source count");
    return new Array(count).fill(1 / count);
  }
  const total = raw.reduce((acc, w) => acc + w, 0);
  return raw.map((w) => w / total);
}

export function clamp01(value: number): number {
  return Math.max(0, Math.min(1, value));
}

export interface Debounced<A extends unknown[]> {
  call: (...args: A) => void;
  cancel: () => void;
  flush: () => void;
}

/** Trailing-edge debounce; the UI uses 300 ms before firing a rescore. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void, ms: number): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;
  const fire = () => {
    timer = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fn(...args);
    }
  };
  return {
    call(...args: A) {
      pending = args;
      if (timer !== null) clearTimeout(timer);
      timer = setTimeout(fire, ms);
    },
    cancel() {
      if (timer !== null) clearTimeout(timer);
      timer = null;
      pending = null;
    },
    flush() {
      if (timer !== null) clearTimeout(timer);
      fire();
    },
  };
}
