/** Explorer wiring: controls -> debounced requests -> charts and cards. */

import { ApiClient } from "./api.js";
import { renderCurveChart, renderHeatmap } from "./charts.js";
import { describeParams, sig } from "./format.js";
import {
  clampState,
  debounce,
  DEFAULT_STATE,
  PAIR_DESIGNS,
  RequestTracker,
  SLIDERS,
  type DesignerState,
} from "./state.js";
import type { ExplorerData, OptimizeResponse } from "./types.js";

const DESIGN_CHOICES: { value: DesignerState["design"]; label: string }[] = [
  { value: "warner", label: "Warner spinner" },
  { value: "uqrr", label: "Unrelated question" },
  { value: "frd", label: "Forced response" },
  { value: "kuk", label: "Two decks (Kuk)" },
  { value: "twostep", label: "Two-step coins" },
];

/** Debounce window between a slider release and the request burst. */
export const DEBOUNCE_MS = 150;

export class Explorer {
  state: DesignerState = { ...DEFAULT_STATE };
  private readonly tracker = new RequestTracker();
  private readonly scheduleRefresh = debounce(() => void this.refreshNow(), DEBOUNCE_MS);

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.buildSkeleton();
    this.buildControls();
  }

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <header>
        <h1>Randomized-response design explorer</h1>
        <p class="subtitle">Balance statistical power against the local
        differential-privacy budget and read off the cheapest adequate design.</p>
      </header>
      <div id="offline-banner" class="banner offline" hidden>
        Service unreachable. Start it with <code>rrdp serve</code> and adjust any slider to retry.
      </div>
      <div id="remedy-banner" class="banner remedy" hidden></div>
      <main>
        <section id="controls"></section>
        <section id="charts">
          <div id="curve-chart" class="chart"></div>
          <div id="region-chart" class="chart"></div>
          <div id="region-display" class="region-display"></div>
        </section>
        <aside id="solution-card" class="card"></aside>
      </main>
    `;
  }

  private buildControls(): void {
    const controls = this.mustFind("#controls");
    const select = document.createElement("select");
    select.id = "design-select";
    for (const choice of DESIGN_CHOICES) {
      const option = document.createElement("option");
      option.value = choice.value;
      option.textContent = choice.label;
      select.appendChild(option);
    }
    select.value = this.state.design;
    select.addEventListener("change", () => {
      this.update({ design: select.value as DesignerState["design"] });
    });
    const selectLabel = document.createElement("label");
    selectLabel.textContent = "design";
    selectLabel.appendChild(select);
    controls.appendChild(selectLabel);

    for (const [key, spec] of Object.entries(SLIDERS)) {
      const field = key as keyof typeof SLIDERS;
      const wrapper = document.createElement("label");
      wrapper.dataset.slider = field;
      const title = document.createElement("span");
      title.textContent = spec.label;
      const value = document.createElement("output");
      value.textContent = sig(this.state[field]);
      const input = document.createElement("input");
      input.type = "range";
      input.min = String(spec.min);
      input.max = String(spec.max);
      input.step = String(spec.step);
      input.value = String(this.state[field]);
      input.addEventListener("input", () => {
        value.textContent = sig(Number(input.value));
        this.update({ [field]: Number(input.value) } as Partial<DesignerState>);
      });
      wrapper.append(title, input, value);
      controls.appendChild(wrapper);
    }
    this.syncControlVisibility();
  }

  private syncControlVisibility(): void {
    const piY = this.root.querySelector<HTMLElement>("[data-slider=piY]");
    const p2 = this.root.querySelector<HTMLElement>("[data-slider=p2]");
    if (piY) piY.hidden = this.state.design !== "uqrr";
    if (p2) p2.hidden = !PAIR_DESIGNS.has(this.state.design);
  }

  /** Apply a state patch and schedule a debounced refresh. */
  update(patch: Partial<DesignerState>): void {
    this.state = clampState({ ...this.state, ...patch });
    this.syncControlVisibility();
    this.scheduleRefresh();
  }

  /** Fetch and render immediately; stale responses are dropped. */
  async refreshNow(): Promise<void> {
    const token = this.tracker.begin();
    const snapshot = { ...this.state };
    let data: ExplorerData;
    try {
      data = await this.api.fetchAll(snapshot);
    } catch {
      if (this.tracker.isCurrent(token)) this.setOffline(true);
      return;
    }
    if (!this.tracker.isCurrent(token)) return;
    this.setOffline(false);
    this.render(snapshot, data);
  }

  private setOffline(offline: boolean): void {
    this.mustFind("#offline-banner").hidden = !offline;
  }

  private render(state: DesignerState, data: ExplorerData): void {
    const curveBox = this.mustFind("#curve-chart");
    const regionBox = this.mustFind("#region-chart");
    const regionDisplay = this.mustFind("#region-display");

    if (PAIR_DESIGNS.has(state.design)) {
      renderCurveChart(
        curveBox, data.curves.points, [], state.epsilonCap, state.targetPower,
      );
      renderHeatmap(regionBox, data.feasible);
      regionDisplay.textContent = "";
    } else {
      const bands = data.feasible.intervals ?? [];
      renderCurveChart(
        curveBox, data.curves.points, bands, state.epsilonCap, state.targetPower,
      );
      regionBox.replaceChildren();
      regionDisplay.textContent =
        data.feasible.display === "empty"
          ? "feasible region: empty"
          : `feasible region: ${data.feasible.display ?? ""}`;
    }

    this.renderBanner(data.fixedN);
    this.renderCard(state, data.fixedN, data.joint);
  }

  private renderBanner(fixedN: OptimizeResponse): void {
    const banner = this.mustFind("#remedy-banner");
    if (fixedN.solution.feasible) {
      banner.hidden = true;
      banner.textContent = "";
    } else {
      banner.hidden = false;
      banner.textContent = fixedN.message ?? "The current settings are infeasible.";
    }
  }

  private renderCard(
    state: DesignerState,
    fixedN: OptimizeResponse,
    joint: OptimizeResponse,
  ): void {
    const card = this.mustFind("#solution-card");
    card.replaceChildren();
    card.appendChild(this.cardSection(
      `At n = ${state.n}`,
      fixedN.solution.feasible
        ? `highest-power design under the cap`
        : `best found (target power missed)`,
      fixedN,
      false,
    ));
    card.appendChild(this.cardSection(
      "Recommended minimum",
      joint.solution.feasible
        ? "smallest sample size reaching the target"
        : "no design reaches the target within the search bound",
      joint,
      true,
    ));
  }

  private cardSection(
    heading: string,
    subtitle: string,
    payload: OptimizeResponse,
    showN: boolean,
  ): HTMLElement {
    const section = document.createElement("section");
    section.className = payload.solution.feasible ? "solution ok" : "solution bad";
    const h = document.createElement("h2");
    h.textContent = heading;
    const sub = document.createElement("p");
    sub.textContent = subtitle;
    section.append(h, sub);
    const dl = document.createElement("dl");
    const add = (term: string, value: string, cls: string) => {
      const dt = document.createElement("dt");
      dt.textContent = term;
      const dd = document.createElement("dd");
      dd.className = cls;
      dd.textContent = value;
      dl.append(dt, dd);
    };
    const sol = payload.solution;
    if (showN) add("n*", sol.n_star === null ? "-" : String(sol.n_star), "n-star");
    if (sol.params) add("parameters", describeParams(sol.params), "params-star");
    if (sol.achieved_power !== null) add("power", sig(sol.achieved_power), "achieved-power");
    if (sol.achieved_epsilon !== null) {
      add("epsilon", sig(sol.achieved_epsilon), "achieved-epsilon");
    }
    section.appendChild(dl);
    return section;
  }

  private mustFind(selector: string): HTMLElement {
    const node = this.root.querySelector<HTMLElement>(selector);
    if (!node) throw new Error(`missing element ${selector}`);
    return node;
  }
}

export function mount(root: HTMLElement, baseUrl = ""): Explorer {
  const explorer = new Explorer(root, new ApiClient(baseUrl));
  void explorer.refreshNow();
  return explorer;
}
