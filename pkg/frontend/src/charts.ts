/** Hand-rolled SVG charts: dual-axis curves with feasible bands, and a heatmap. */

import { sig } from "./format.js";
import type { CurvePoint, FeasibleResponse, IntervalOut } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface ChartLayout {
  width: number;
  height: number;
  padLeft: number;
  padRight: number;
  padTop: number;
  padBottom: number;
}

export const DEFAULT_LAYOUT: ChartLayout = {
  width: 640,
  height: 360,
  padLeft: 56,
  padRight: 56,
  padTop: 16,
  padBottom: 40,
};

function el<K extends string>(tag: K, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

function text(content: string, attrs: Record<string, string | number>): SVGElement {
  const node = el("text", attrs);
  node.textContent = content;
  return node;
}

/** Affine map from a data range onto a pixel range. */
export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): (v: number) => number {
  const slope = (r1 - r0) / (d1 - d0);
  return (v: number) => r0 + (v - d0) * slope;
}

/**
 * Parameter-sweep chart: the privacy budget on the left axis, test power on
 * the right, the cap and target drawn as guides, and the jointly feasible
 * parameter intervals highlighted as translucent bands.
 */
export function renderCurveChart(
  container: HTMLElement,
  points: CurvePoint[],
  bands: IntervalOut[],
  epsilonCap: number,
  targetPower: number,
  layout: ChartLayout = DEFAULT_LAYOUT,
): void {
  container.replaceChildren();
  const { width, height, padLeft, padRight, padTop, padBottom } = layout;
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width,
    height,
    class: "curve-chart",
  });

  const finiteEps = points.map((pt) => pt.epsilon).filter(Number.isFinite);
  const epsTop = Math.max(epsilonCap * 1.25, ...finiteEps, 0.1);
  const x = linearScale(0, 1, padLeft, width - padRight);
  const yEps = linearScale(0, epsTop, height - padBottom, padTop);
  const yPow = linearScale(0, 1, height - padBottom, padTop);

  for (const band of bands) {
    const lo = band.lower_open ? band.lo_refined : band.lo;
    const hi = band.upper_open ? band.hi_refined : band.hi;
    svg.appendChild(
      el("rect", {
        class: "feasible-band",
        x: x(lo),
        y: padTop,
        width: Math.max(x(hi) - x(lo), 1),
        height: height - padTop - padBottom,
      }),
    );
  }

  // axes
  svg.appendChild(el("line", {
    class: "axis", x1: padLeft, y1: height - padBottom,
    x2: width - padRight, y2: height - padBottom,
  }));
  svg.appendChild(el("line", {
    class: "axis", x1: padLeft, y1: padTop, x2: padLeft, y2: height - padBottom,
  }));
  svg.appendChild(el("line", {
    class: "axis", x1: width - padRight, y1: padTop,
    x2: width - padRight, y2: height - padBottom,
  }));
  for (let i = 0; i <= 4; i++) {
    const p = i / 4;
    svg.appendChild(text(sig(p, 3), {
      class: "tick", x: x(p), y: height - padBottom + 16, "text-anchor": "middle",
    }));
    svg.appendChild(text(sig((epsTop * i) / 4, 3), {
      class: "tick", x: padLeft - 6, y: yEps((epsTop * i) / 4) + 4, "text-anchor": "end",
    }));
    svg.appendChild(text(sig(p, 3), {
      class: "tick", x: width - padRight + 6, y: yPow(p) + 4, "text-anchor": "start",
    }));
  }
  svg.appendChild(text("design parameter", {
    class: "axis-label", x: (padLeft + width - padRight) / 2,
    y: height - 6, "text-anchor": "middle",
  }));
  svg.appendChild(text("privacy budget", {
    class: "axis-label eps", x: 14, y: padTop + 10,
  }));
  svg.appendChild(text("power", {
    class: "axis-label pow", x: width - padRight + 6, y: padTop + 10,
  }));

  // constraint guides
  if (epsilonCap <= epsTop) {
    svg.appendChild(el("line", {
      class: "guide eps-cap", x1: padLeft, x2: width - padRight,
      y1: yEps(epsilonCap), y2: yEps(epsilonCap),
    }));
  }
  svg.appendChild(el("line", {
    class: "guide power-target", x1: padLeft, x2: width - padRight,
    y1: yPow(targetPower), y2: yPow(targetPower),
  }));

  const epsPath = points
    .filter((pt) => Number.isFinite(pt.epsilon) && pt.epsilon <= epsTop)
    .map((pt) => `${x(pt.p)},${yEps(pt.epsilon)}`)
    .join(" ");
  const powPath = points.map((pt) => `${x(pt.p)},${yPow(pt.power)}`).join(" ");
  svg.appendChild(el("polyline", { class: "epsilon-curve", points: epsPath, fill: "none" }));
  svg.appendChild(el("polyline", { class: "power-curve", points: powPath, fill: "none" }));

  container.appendChild(svg);
}

/**
 * Feasibility heatmap for two-parameter designs: one cell per feasible
 * (p1, p2) grid point.
 */
export function renderHeatmap(
  container: HTMLElement,
  region: FeasibleResponse,
  layout: ChartLayout = DEFAULT_LAYOUT,
): void {
  container.replaceChildren();
  const p1 = region.p1_values ?? [];
  const p2 = region.p2_values ?? [];
  const cells = region.cells ?? [];
  const { width, height, padLeft, padRight, padTop, padBottom } = layout;
  const svg = el("svg", {
    viewBox: `0 0 ${width} ${height}`,
    width,
    height,
    class: "heatmap",
  });
  const x = linearScale(0, 1, padLeft, width - padRight);
  const y = linearScale(0, 1, height - padBottom, padTop);
  const cellW = (x(1) - x(0)) * region.grid;
  const cellH = (y(0) - y(1)) * region.grid;

  svg.appendChild(el("rect", {
    class: "heatmap-domain", x: x(0), y: y(1),
    width: x(1) - x(0), height: y(0) - y(1),
  }));
  let feasibleCount = 0;
  for (let i = 0; i < p1.length; i++) {
    const row = cells[i];
    if (!row) continue;
    for (let j = 0; j < p2.length; j++) {
      if (!row[j]) continue;
      feasibleCount += 1;
      svg.appendChild(el("rect", {
        class: "cell",
        x: x(p1[i]!) - cellW / 2,
        y: y(p2[j]!) - cellH / 2,
        width: cellW,
        height: cellH,
      }));
    }
  }
  for (let i = 0; i <= 4; i++) {
    const v = i / 4;
    svg.appendChild(text(sig(v, 3), {
      class: "tick", x: x(v), y: height - padBottom + 16, "text-anchor": "middle",
    }));
    svg.appendChild(text(sig(v, 3), {
      class: "tick", x: padLeft - 6, y: y(v) + 4, "text-anchor": "end",
    }));
  }
  svg.appendChild(text("p1", {
    class: "axis-label", x: (padLeft + width - padRight) / 2,
    y: height - 6, "text-anchor": "middle",
  }));
  svg.appendChild(text("p2", { class: "axis-label", x: 14, y: padTop + 10 }));
  svg.appendChild(text(
    feasibleCount > 0
      ? `${feasibleCount} feasible parameter cells`
      : "no feasible parameter cells",
    { class: "heatmap-summary", x: (padLeft + width - padRight) / 2, y: padTop + 10, "text-anchor": "middle" },
  ));
  container.appendChild(svg);
}
