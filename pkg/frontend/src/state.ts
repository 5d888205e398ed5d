/** Explorer state: slider ranges, clamping, debouncing, stale-response guard. */

import type { DesignName } from "./types.js";

export interface DesignerState {
  design: DesignName;
  pi0: number;
  pi1: number;
  alpha: number;
  n: number;
  epsilonCap: number;
  targetPower: number;
  piY: number;
  p2: number;
}

export interface SliderSpec {
  label: string;
  min: number;
  max: number;
  step: number;
}

export const SLIDERS: Record<
  Exclude<keyof DesignerState, "design">,
  SliderSpec
> = {
  pi0: { label: "null proportion pi0", min: 0.01, max: 0.99, step: 0.01 },
  pi1: { label: "alternative pi1", min: 0.01, max: 0.99, step: 0.01 },
  alpha: { label: "significance alpha", min: 0.01, max: 0.2, step: 0.005 },
  n: { label: "sample size n", min: 100, max: 5000, step: 50 },
  epsilonCap: { label: "privacy cap epsilon", min: 0.1, max: 3, step: 0.05 },
  targetPower: { label: "target power", min: 0.5, max: 0.95, step: 0.01 },
  piY: { label: "innocuous prevalence pi_y", min: 0.05, max: 0.95, step: 0.01 },
  p2: { label: "fixed p2 (curve slice)", min: 0.05, max: 0.9, step: 0.01 },
};

export const DEFAULT_STATE: DesignerState = {
  design: "warner",
  pi0: 0.2,
  pi1: 0.3,
  alpha: 0.05,
  n: 1000,
  epsilonCap: 1.0,
  targetPower: 0.8,
  piY: 0.6,
  p2: 0.25,
};

/** Designs with a two-dimensional parameter; these render a heatmap. */
export const PAIR_DESIGNS: ReadonlySet<string> = new Set(["frd", "kuk"]);

const clip = (v: number, lo: number, hi: number) =>
  Math.min(hi, Math.max(lo, v));

/**
 * Clamp every slider into its range before any request leaves the page, and
 * keep pi0/pi1 distinct (the test is undefined when they coincide).
 */
export function clampState(state: DesignerState): DesignerState {
  const out = { ...state };
  for (const key of Object.keys(SLIDERS) as (keyof typeof SLIDERS)[]) {
    const { min, max } = SLIDERS[key];
    out[key] = clip(out[key], min, max);
  }
  if (out.pi0 === out.pi1) {
    out.pi1 = out.pi1 + SLIDERS.pi1.step <= SLIDERS.pi1.max
      ? out.pi1 + SLIDERS.pi1.step
      : out.pi1 - SLIDERS.pi1.step;
  }
  return out;
}

/**
 * Monotone token source: a response is rendered only when its token is still
 * the latest, so a slow earlier reply can never overwrite a newer view.
 */
export class RequestTracker {
  private latest = 0;

  begin(): number {
    return ++this.latest;
  }

  isCurrent(token: number): boolean {
    return token === this.latest;
  }
}

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

/** Trailing-edge debounce used to bound the request rate while sliding. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let pending: A | null = null;
  const run = (...args: A) => {
    pending = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      const args2 = pending as A;
      pending = null;
      fn(...args2);
    }, waitMs);
  };
  run.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    pending = null;
  };
  run.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      timer = null;
      const args2 = pending as A;
      pending = null;
      fn(...args2);
    }
  };
  return run;
}
