/** Number formatting shared by the solution card and chart labels. */

/** Format with up to `digits` significant digits, trimming float noise. */
export function sig(value: number, digits = 6): string {
  if (!Number.isFinite(value)) return String(value);
  if (value === 0) return "0";
  const out = value.toPrecision(digits);
  // strip trailing zeros of the decimal part but keep integer zeros
  return out.includes(".") && !out.includes("e")
    ? out.replace(/\.?0+$/, "")
    : out;
}

/** Render design parameters like "p = 0.27" or "p1 = 0.33, p2 = 0.25". */
export function describeParams(params: {
  p: number | null;
  p1: number | null;
  p2: number | null;
  pi_y: number | null;
}): string {
  const parts: string[] = [];
  if (params.p !== null) parts.push(`p = ${sig(params.p)}`);
  if (params.p1 !== null) parts.push(`p1 = ${sig(params.p1)}`);
  if (params.p2 !== null) parts.push(`p2 = ${sig(params.p2)}`);
  if (params.pi_y !== null) parts.push(`pi_y = ${sig(params.pi_y)}`);
  return parts.join(", ");
}
