import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import {
  clampState,
  debounce,
  DEFAULT_STATE,
  RequestTracker,
  SLIDERS,
} from "../src/state.js";

describe("clampState", () => {
  it("clamps every slider into its range", () => {
    const wild = { ...DEFAULT_STATE, pi0: -3, n: 10 ** 9, epsilonCap: 0 };
    const clamped = clampState(wild);
    expect(clamped.pi0).toBe(SLIDERS.pi0.min);
    expect(clamped.n).toBe(SLIDERS.n.max);
    expect(clamped.epsilonCap).toBe(SLIDERS.epsilonCap.min);
  });

  it("keeps the two hypothesis proportions distinct", () => {
    const tied = clampState({ ...DEFAULT_STATE, pi0: 0.3, pi1: 0.3 });
    expect(tied.pi1).not.toBe(tied.pi0);
    // nudging at the top of the range moves downward instead
    const top = clampState({ ...DEFAULT_STATE, pi0: 0.99, pi1: 0.99 });
    expect(top.pi1).toBeLessThan(0.99);
  });

  it("leaves valid states untouched", () => {
    expect(clampState({ ...DEFAULT_STATE })).toEqual(DEFAULT_STATE);
  });
});

describe("RequestTracker", () => {
  it("treats only the newest token as current", () => {
    const tracker = new RequestTracker();
    const first = tracker.begin();
    const second = tracker.begin();
    expect(tracker.isCurrent(first)).toBe(false);
    expect(tracker.isCurrent(second)).toBe(true);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("fires once on the trailing edge with the last arguments", () => {
    const calls: number[] = [];
    const run = debounce((v: number) => calls.push(v), 150);
    run(1);
    vi.advanceTimersByTime(100);
    run(2);
    vi.advanceTimersByTime(100);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(60);
    expect(calls).toEqual([2]);
  });

  it("can be cancelled and flushed", () => {
    const calls: number[] = [];
    const run = debounce((v: number) => calls.push(v), 150);
    run(1);
    run.cancel();
    vi.advanceTimersByTime(1000);
    expect(calls).toEqual([]);
    run(7);
    run.flush();
    expect(calls).toEqual([7]);
  });
});
