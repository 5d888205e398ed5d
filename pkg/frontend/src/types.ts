/** JSON payload types mirroring the rrdp service schemas. */

export type DesignName = "warner" | "uqrr" | "frd" | "kuk" | "twostep";

export interface DesignOut {
  design: string;
  p: number | null;
  p1: number | null;
  p2: number | null;
  pi_y: number | null;
}

export interface CurvePoint {
  p: number;
  epsilon: number;
  power: number;
}

export interface CurvesResponse {
  schema_version: string;
  design: string;
  n: number;
  grid: number;
  points: CurvePoint[];
}

export interface IntervalOut {
  lo: number;
  hi: number;
  lo_refined: number;
  hi_refined: number;
  lower_open: boolean;
  upper_open: boolean;
  display: string;
}

export interface FeasibleResponse {
  schema_version: string;
  design: string;
  mode: string;
  grid: number;
  intervals: IntervalOut[] | null;
  display: string | null;
  p1_values: number[] | null;
  p2_values: number[] | null;
  cells: boolean[][] | null;
}

export interface SolutionOut {
  feasible: boolean;
  n_star: number | null;
  params: DesignOut | null;
  achieved_power: number | null;
  achieved_epsilon: number | null;
}

export interface OptimizeResponse {
  schema_version: string;
  design: string;
  mode: string;
  epsilon: number;
  strict: boolean;
  target_power: number;
  solution: SolutionOut;
  message: string | null;
}

/** One full explorer refresh: everything the view renders. */
export interface ExplorerData {
  curves: CurvesResponse;
  feasible: FeasibleResponse;
  fixedN: OptimizeResponse;
  joint: OptimizeResponse;
}
