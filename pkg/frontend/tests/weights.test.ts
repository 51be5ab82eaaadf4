import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { clamp01, debounce, normalizeWeights } from "../src/weights.js";

describe("normalizeWeights", () => {
  it("defaults unset weights to 1/m", () => {
    expect(normalizeWeights(null, 3)).toEqual([1 / 3, 1 / 3, 1 / 3]);
  });

  it("divides by the sum", () => {
    expect(normalizeWeights([2, 1, 1])).toEqual([0.5, 0.25, 0.25]);
  });

  it("keeps already-normalized weights", () => {
    expect(normalizeWeights([0.5, 0.5])).toEqual([0.5, 0.5]);
  });

  it("treats all-zero as unset", () => {
    expect(normalizeWeights([0, 0], 2)).toEqual([0.5, 0.5]);
  });

  it("rejects negative weights", () => {
    expect(() => normalizeWeights([1, -0.5])).toThrow();
  });

  it("always sums to 1", () => {
    for (const raw of [[0.17, 0.9, 0.33], [5, 5, 5, 5], [1e-3, 1]]) {
      const sum = normalizeWeights(raw).reduce((a, b) => a + b, 0);
      expect(Math.abs(sum - 1)).toBeLessThanOrEqual(1e-12);
    }
  });
});

describe("clamp01", () => {
  it("clamps into [0, 1]", () => {
    expect(clamp01(-0.2)).toBe(0);
    expect(clamp01(1.7)).toBe(1);
    expect(clamp01(0.42)).toBe(0.42);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once with the latest arguments", () => {
    const calls: number[][] = [];
    const d = debounce((...args: number[]) => calls.push(args), 300);
    d.call(1);
    vi.advanceTimersByTime(100);
    d.call(2);
    vi.advanceTimersByTime(100);
    d.call(3);
    vi.advanceTimersByTime(299);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([[3]]);
  });

  it("cancel drops the pending call", () => {
    const fn = vi.fn();
    const d = debounce(fn, 300);
    d.call();
    d.cancel();
    vi.advanceTimersByTime(1000);
    expect(fn).not.toHaveBeenCalled();
  });
});
