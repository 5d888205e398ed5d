/**
 * End-to-end view tests: the explorer is mounted against a fetch mock that
 * replays real service payloads captured from the live API, so every number
 * shown is checked against an actual endpoint response.
 */

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { Explorer } from "../src/app.js";
import { sig } from "../src/format.js";
import type { OptimizeResponse } from "../src/types.js";

import warnerCurves from "./fixtures/warner_curves.json" with { type: "json" };
import warnerFeasible from "./fixtures/warner_feasible.json" with { type: "json" };
import warnerFixed from "./fixtures/warner_fixed.json" with { type: "json" };
import warnerJoint from "./fixtures/warner_joint.json" with { type: "json" };
import uqrrCurves from "./fixtures/uqrr_curves.json" with { type: "json" };
import uqrrFeasible from "./fixtures/uqrr_feasible.json" with { type: "json" };
import uqrrFixed from "./fixtures/uqrr_fixed.json" with { type: "json" };
import uqrrJoint from "./fixtures/uqrr_joint.json" with { type: "json" };
import frdCurves from "./fixtures/frd_curves.json" with { type: "json" };
import frdFeasible from "./fixtures/frd_feasible.json" with { type: "json" };
import frdFixed from "./fixtures/frd_fixed.json" with { type: "json" };
import frdJoint from "./fixtures/frd_joint.json" with { type: "json" };

type Scenario = "warner" | "uqrr" | "frd";

const FIXTURES: Record<Scenario, Record<string, { status: number; body: unknown }>> = {
  warner: {
    curves: { status: 200, body: warnerCurves },
    feasible: { status: 200, body: warnerFeasible },
    fixed: { status: 200, body: warnerFixed },
    joint: { status: 200, body: warnerJoint },
  },
  uqrr: {
    curves: { status: 200, body: uqrrCurves },
    feasible: { status: 200, body: uqrrFeasible },
    // infeasible designs answer 422 with the best-found solution attached
    fixed: { status: 422, body: uqrrFixed },
    joint: { status: 200, body: uqrrJoint },
  },
  frd: {
    curves: { status: 200, body: frdCurves },
    feasible: { status: 200, body: frdFeasible },
    fixed: { status: 200, body: frdFixed },
    joint: { status: 200, body: frdJoint },
  },
};

function installFetchMock(): void {
  vi.stubGlobal(
    "fetch",
    vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
      const path = String(url);
      const body = JSON.parse(String(init?.body ?? "{}")) as Record<string, unknown>;
      const scenario = body.design as Scenario;
      const routes = FIXTURES[scenario];
      if (!routes) throw new Error(`no fixture for design ${String(body.design)}`);
      let entry;
      if (path.endsWith("/curves")) entry = routes.curves;
      else if (path.endsWith("/feasible")) entry = routes.feasible;
      else if (path.endsWith("/optimize")) {
        entry = "n" in body ? routes.fixed : routes.joint;
      } else throw new Error(`unexpected request ${path}`);
      return new Response(JSON.stringify(entry!.body), {
        status: entry!.status,
        headers: { "content-type": "application/json" },
      });
    }),
  );
}

async function mountExplorer(): Promise<{ root: HTMLElement; explorer: Explorer }> {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const explorer = new Explorer(root, new ApiClient(""));
  await explorer.refreshNow();
  return { root, explorer };
}

beforeEach(() => installFetchMock());
afterEach(() => {
  vi.unstubAllGlobals();
  document.body.replaceChildren();
});

describe("spinner scenario (feasible)", () => {
  it("highlights exactly two feasible bands and no remedy banner", async () => {
    const { root } = await mountExplorer();
    expect(root.querySelectorAll("rect.feasible-band")).toHaveLength(2);
    expect(root.querySelector<HTMLElement>("#remedy-banner")!.hidden).toBe(true);
    expect(root.querySelector("#region-display")!.textContent).toContain(
      (warnerFeasible as { display: string }).display,
    );
  });

  it("shows the recommended solution exactly as the endpoint reported it", async () => {
    const { root } = await mountExplorer();
    const joint = warnerJoint as OptimizeResponse;
    const sol = joint.solution;
    expect(root.querySelector(".n-star")!.textContent).toBe(String(sol.n_star));
    expect(root.querySelector(".params-star")!.textContent).toContain(
      `p = ${sig(sol.params!.p!)}`,
    );
    const [fixedPower, jointPower] = [...root.querySelectorAll(".achieved-power")];
    const [fixedEps, jointEps] = [...root.querySelectorAll(".achieved-epsilon")];
    const fixed = warnerFixed as OptimizeResponse;
    expect(fixedPower!.textContent).toBe(sig(fixed.solution.achieved_power!));
    expect(fixedEps!.textContent).toBe(sig(fixed.solution.achieved_epsilon!));
    expect(jointPower!.textContent).toBe(sig(sol.achieved_power!));
    expect(jointEps!.textContent).toBe(sig(sol.achieved_epsilon!));
  });
});

describe("unrelated-question scenario (infeasible at the current n)", () => {
  it("renders the remedy banner and an empty region", async () => {
    const { root, explorer } = await mountExplorer();
    explorer.state = { ...explorer.state, design: "uqrr" };
    await explorer.refreshNow();
    const banner = root.querySelector<HTMLElement>("#remedy-banner")!;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toBe((uqrrFixed as OptimizeResponse).message);
    expect(banner.textContent).toContain("Relax the privacy constraint");
    expect(root.querySelectorAll("rect.feasible-band")).toHaveLength(0);
    expect(root.querySelector("#region-display")!.textContent).toContain("empty");
  });

  it("still recommends the larger sample size from the joint search", async () => {
    const { root, explorer } = await mountExplorer();
    explorer.state = { ...explorer.state, design: "uqrr" };
    await explorer.refreshNow();
    const joint = uqrrJoint as OptimizeResponse;
    expect(root.querySelector(".n-star")!.textContent).toBe(
      String(joint.solution.n_star),
    );
  });
});

describe("two-parameter scenario", () => {
  it("renders the feasibility heatmap instead of bands", async () => {
    const { root, explorer } = await mountExplorer();
    explorer.state = { ...explorer.state, design: "frd" };
    await explorer.refreshNow();
    expect(root.querySelectorAll("rect.feasible-band")).toHaveLength(0);
    const cells = root.querySelectorAll("#region-chart rect.cell");
    const truthy = (frdFeasible as { cells: boolean[][] }).cells
      .flat()
      .filter(Boolean).length;
    expect(cells).toHaveLength(truthy);
  });
});

describe("slider interaction", () => {
  it("updates the readout immediately but debounces the request burst", async () => {
    const { root } = await mountExplorer();
    const fetchMock = fetch as ReturnType<typeof vi.fn>;
    const initialCalls = fetchMock.mock.calls.length;
    expect(initialCalls).toBe(4); // curves, feasible, fixed, joint

    vi.useFakeTimers();
    try {
      const wrapper = root.querySelector<HTMLElement>("[data-slider=n]")!;
      const slider = wrapper.querySelector<HTMLInputElement>("input")!;
      const readout = wrapper.querySelector<HTMLOutputElement>("output")!;

      slider.value = "1200";
      slider.dispatchEvent(new Event("input"));
      slider.value = "1500";
      slider.dispatchEvent(new Event("input"));

      // the label tracks the thumb instantly, no request yet
      expect(readout.textContent).toBe("1500");
      expect(fetchMock.mock.calls.length).toBe(initialCalls);

      await vi.advanceTimersByTimeAsync(200);
      // one burst for the final value only
      expect(fetchMock.mock.calls.length).toBe(initialCalls + 4);
      const bodies = fetchMock.mock.calls
        .slice(initialCalls)
        .map((c) => JSON.parse(String((c[1] as RequestInit).body)));
      const curvesBody = bodies.find((b) => "grid" in b && !("epsilon" in b));
      expect(curvesBody.n).toBe(1500);
    } finally {
      vi.useRealTimers();
    }
  });
});

describe("robustness", () => {
  it("reproduces the identical view after a slider round trip", async () => {
    const { root, explorer } = await mountExplorer();
    const before = root.querySelector("#charts")!.innerHTML;
    const cardBefore = root.querySelector("#solution-card")!.innerHTML;
    explorer.state = { ...explorer.state, design: "uqrr" };
    await explorer.refreshNow();
    explorer.state = { ...explorer.state, design: "warner" };
    await explorer.refreshNow();
    expect(root.querySelector("#charts")!.innerHTML).toBe(before);
    expect(root.querySelector("#solution-card")!.innerHTML).toBe(cardBefore);
  });

  it("shows the offline banner when the service is unreachable", async () => {
    vi.stubGlobal("fetch", vi.fn(async () => {
      throw new TypeError("network down");
    }));
    const { root } = await mountExplorer();
    expect(root.querySelector<HTMLElement>("#offline-banner")!.hidden).toBe(false);
  });

  it("drops stale responses when newer input superseded them", async () => {
    const { root, explorer } = await mountExplorer();
    // start a slow uqrr refresh, then finish a warner refresh first
    let releaseSlow!: () => void;
    const gate = new Promise<void>((resolve) => {
      releaseSlow = resolve;
    });
    const realFetch = fetch;
    vi.stubGlobal(
      "fetch",
      vi.fn(async (url: RequestInfo | URL, init?: RequestInit) => {
        const body = JSON.parse(String(init?.body ?? "{}"));
        if (body.design === "uqrr") await gate;
        return realFetch(url, init);
      }),
    );
    explorer.state = { ...explorer.state, design: "uqrr" };
    const slow = explorer.refreshNow();
    explorer.state = { ...explorer.state, design: "warner" };
    await explorer.refreshNow();
    releaseSlow();
    await slow;
    // the view still shows the newer (feasible) scenario
    expect(root.querySelector<HTMLElement>("#remedy-banner")!.hidden).toBe(true);
    expect(root.querySelectorAll("rect.feasible-band")).toHaveLength(2);
  });
});
