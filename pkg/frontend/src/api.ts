/** Thin typed client for the rrdp HTTP service. */

import type { DesignerState } from "./state.js";
import { PAIR_DESIGNS } from "./state.js";
import type {
  CurvesResponse,
  ExplorerData,
  FeasibleResponse,
  OptimizeResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

/** Grid used for curves and regions; two decimals matches the reference intervals. */
const GRID = 0.01;

/** Search bound for the recommended minimal sample size. */
const N_MAX = 20000;

function designFields(state: DesignerState): Record<string, unknown> {
  const fields: Record<string, unknown> = { design: state.design };
  if (state.design === "uqrr") fields.pi_y = state.piY;
  if (PAIR_DESIGNS.has(state.design)) fields.p2 = state.p2;
  return fields;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  private async post<T>(path: string, body: unknown, okInfeasible = false): Promise<T> {
    const response = await fetch(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    // infeasible optimizations answer 422 with the best-found solution body
    if (!response.ok && !(okInfeasible && response.status === 422)) {
      throw new ApiError(`${path} failed: ${response.status}`, response.status);
    }
    return (await response.json()) as T;
  }

  curves(state: DesignerState): Promise<CurvesResponse> {
    const fields = designFields(state);
    // the curve endpoint slices pair designs at a fixed p2 but takes no pi_y
    // wrapper object; it shares the hypothesis fields
    return this.post<CurvesResponse>("/curves", {
      ...fields,
      pi0: state.pi0,
      pi1: state.pi1,
      alpha: state.alpha,
      n: state.n,
      grid: GRID,
    });
  }

  feasible(state: DesignerState): Promise<FeasibleResponse> {
    const fields: Record<string, unknown> = { design: state.design };
    if (state.design === "uqrr") fields.pi_y = state.piY;
    return this.post<FeasibleResponse>("/feasible", {
      ...fields,
      pi0: state.pi0,
      pi1: state.pi1,
      alpha: state.alpha,
      n: state.n,
      epsilon: state.epsilonCap,
      strict: true,
      target_power: state.targetPower,
      grid: GRID,
      mode: "both",
    });
  }

  optimizeFixedN(state: DesignerState): Promise<OptimizeResponse> {
    const fields: Record<string, unknown> = { design: state.design };
    if (state.design === "uqrr") fields.pi_y = state.piY;
    return this.post<OptimizeResponse>(
      "/optimize",
      {
        ...fields,
        pi0: state.pi0,
        pi1: state.pi1,
        alpha: state.alpha,
        epsilon: state.epsilonCap,
        strict: true,
        target_power: state.targetPower,
        n: state.n,
        grid: GRID,
      },
      true,
    );
  }

  optimizeJoint(state: DesignerState): Promise<OptimizeResponse> {
    const fields: Record<string, unknown> = { design: state.design };
    if (state.design === "uqrr") fields.pi_y = state.piY;
    return this.post<OptimizeResponse>(
      "/optimize",
      {
        ...fields,
        pi0: state.pi0,
        pi1: state.pi1,
        alpha: state.alpha,
        epsilon: state.epsilonCap,
        strict: true,
        target_power: state.targetPower,
        n_max: N_MAX,
        grid: GRID,
      },
      true,
    );
  }

  /** Everything one explorer refresh needs, fetched concurrently. */
  async fetchAll(state: DesignerState): Promise<ExplorerData> {
    const [curves, feasible, fixedN, joint] = await Promise.all([
      this.curves(state),
      this.feasible(state),
      this.optimizeFixedN(state),
      this.optimizeJoint(state),
    ]);
    return { curves, feasible, fixedN, joint };
  }
}
