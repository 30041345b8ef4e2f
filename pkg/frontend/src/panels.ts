// The three interactive panels. Each mount function builds its DOM inside a
// container and returns a handle the bootstrap (and the tests) drive. All
// numbers on screen come from API responses; the client computes nothing.

import { ApiClient, ApiError, isAbort } from "./api.js";
import { ScenarioStore } from "./cards.js";
import { renderChart } from "./chart.js";
import { renderHistogram, renderPriorSketch } from "./density.js";
import { fmt, fmtSeed, fmtTriple } from "./format.js";
import type {
  DesignEstRequest,
  Mode,
  ProspectiveResult,
  RiskTriple,
  SensitivityRow,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function labeled(doc: Document, label: string, input: HTMLElement): HTMLLabelElement {
  const wrap = el(doc, "label", { class: "field" });
  wrap.appendChild(el(doc, "span", {}, label));
  wrap.appendChild(input);
  return wrap;
}

function numberInput(doc: Document, name: string, value: string, step = "any"): HTMLInputElement {
  return el(doc, "input", { type: "number", name, value, step });
}

const prospectiveSummary = (result: unknown) => {
  const r = result as ProspectiveResult;
  return `n=${r.n} · ${fmtTriple(r)}`;
};

const tripleSummary = (result: unknown) => fmtTriple(result as RiskTriple);

// ---------------------------------------------------------------- prospective

export interface ProspectivePanel {
  element: HTMLElement;
  /** Live re-query fired by the power slider (current mode). */
  preview(): Promise<void>;
  /** Explicit run: always a simulation, recorded as a scenario card. */
  run(): Promise<void>;
  powerSlider: HTMLInputElement;
  nDisplay: HTMLElement;
  statusBox: HTMLElement;
  modeSelect: HTMLSelectElement;
  inputs: { d: HTMLInputElement; alpha: HTMLInputElement; tol: HTMLInputElement; seed: HTMLInputElement };
}

export function mountProspectivePanel(
  container: HTMLElement,
  client: ApiClient,
  store: ScenarioStore,
): ProspectivePanel {
  const doc = container.ownerDocument;
  const root = el(doc, "section", { class: "panel", id: "prospective-panel" });
  root.appendChild(el(doc, "h2", {}, "Prospective: plan a sample size"));

  const d = numberInput(doc, "d", "0.25", "0.05");
  const alpha = numberInput(doc, "alpha", "0.05", "0.01");
  const tol = numberInput(doc, "tol", "0.005");
  const seed = el(doc, "input", { type: "number", name: "seed", placeholder: "random" });
  const slider = el(doc, "input", {
    type: "range", name: "power", min: "0.2", max: "0.95", step: "0.01", value: "0.8",
  });
  const sliderValue = el(doc, "span", { class: "slider-value" }, "0.80");
  const mode = el(doc, "select", { name: "mode" });
  mode.appendChild(el(doc, "option", { value: "exact" }, "exact (instant preview)"));
  mode.appendChild(el(doc, "option", { value: "simulate" }, "simulate"));

  const form = el(doc, "div", { class: "fields" });
  form.appendChild(labeled(doc, "plausible d", d));
  const powerField = el(doc, "label", { class: "field" });
  powerField.appendChild(el(doc, "span", {}, "target power"));
  powerField.appendChild(slider);
  powerField.appendChild(sliderValue);
  form.appendChild(powerField);
  form.appendChild(labeled(doc, "alpha", alpha));
  form.appendChild(labeled(doc, "tol", tol));
  form.appendChild(labeled(doc, "seed", seed));
  form.appendChild(labeled(doc, "mode", mode));
  root.appendChild(form);

  const runButton = el(doc, "button", { type: "button" }, "Run simulation");
  root.appendChild(runButton);

  const nDisplay = el(doc, "div", { class: "headline", id: "prospective-n" }, "—");
  const status = el(doc, "div", { class: "status" });
  root.appendChild(nDisplay);
  root.appendChild(status);
  container.appendChild(root);

  function request(modeOverride?: Mode) {
    const body: Record<string, unknown> = {
      d: Number(d.value),
      power: Number(slider.value),
      alpha: Number(alpha.value),
      tol: Number(tol.value),
      mode: modeOverride ?? (mode.value as Mode),
    };
    if (seed.value !== "" && body["mode"] === "simulate") body["seed"] = Number(seed.value);
    return body;
  }

  function show(result: ProspectiveResult, usedMode: Mode, usedSeed: number | null) {
    nDisplay.textContent = `n = ${result.n} per group`;
    status.textContent = `${fmtTriple(result)} · ${usedMode} · ${fmtSeed(usedSeed)}`;
    status.classList.remove("error");
  }

  function showError(err: unknown) {
    if (isAbort(err)) return;
    status.classList.add("error");
    if (err instanceof ApiError && err.body.code === "unreachable-power") {
      nDisplay.textContent = "unreachable";
      status.textContent =
        `target power ${err.body.targetPower} is unreachable in range: ` +
        `n = ${err.body.nUpper} achieves ${fmt(err.body.achievedPower ?? null)}`;
    } else {
      status.textContent = err instanceof Error ? err.message : String(err);
    }
  }

  async function query(body: Record<string, unknown>, record: boolean): Promise<void> {
    try {
      const envelope = await client.prospective(body as never);
      show(envelope.result, body["mode"] as Mode, envelope.seed);
      if (record) {
        store.record(
          `prospective d=${body["d"]} power=${body["power"]}`,
          "/prospective", envelope, prospectiveSummary,
        );
      }
    } catch (err) {
      showError(err);
    }
  }

  const panel: ProspectivePanel = {
    element: root,
    preview: () => query(request(), false),
    run: () => query(request("simulate"), true),
    powerSlider: slider,
    nDisplay,
    statusBox: status,
    modeSelect: mode,
    inputs: { d, alpha, tol, seed },
  };

  slider.addEventListener("input", () => {
    sliderValue.textContent = Number(slider.value).toFixed(2);
    void panel.preview();
  });
  d.addEventListener("change", () => void panel.preview());
  runButton.addEventListener("click", () => void panel.run());
  return panel;
}

// --------------------------------------------------------------- retrospective

export interface RetrospectivePanel {
  element: HTMLElement;
  run(): Promise<void>;
  /** Used by the sensitivity chart: clicking a point plans both groups at n. */
  setSampleSizes(n: number): void;
  kindSelect: HTMLSelectElement;
  inputs: {
    d: HTMLInputElement;
    n1: HTMLInputElement;
    n2: HTMLInputElement;
    lower: HTMLInputElement;
    upper: HTMLInputElement;
    k: HTMLInputElement;
    seed: HTMLInputElement;
  };
  distributionSelect: HTMLSelectElement;
  modeSelect: HTMLSelectElement;
  returnData: HTMLInputElement;
  resultBox: HTMLElement;
  drawsBox: HTMLElement;
}

export function mountRetrospectivePanel(
  container: HTMLElement,
  client: ApiClient,
  store: ScenarioStore,
): RetrospectivePanel {
  const doc = container.ownerDocument;
  const root = el(doc, "section", { class: "panel", id: "retrospective-panel" });
  root.appendChild(el(doc, "h2", {}, "Retrospective: evaluate a design"));

  const kind = el(doc, "select", { name: "kind" });
  kind.appendChild(el(doc, "option", { value: "point" }, "single plausible d"));
  kind.appendChild(el(doc, "option", { value: "interval" }, "plausible interval"));

  const d = numberInput(doc, "d", "0.25", "0.05");
  const n1 = numberInput(doc, "n1", "31", "1");
  const n2 = numberInput(doc, "n2", "31", "1");
  const lower = numberInput(doc, "lower", "0.20", "0.05");
  const upper = numberInput(doc, "upper", "0.60", "0.05");
  const k = numberInput(doc, "k", "0.1667");
  const seed = el(doc, "input", { type: "number", name: "seed", placeholder: "random" });
  const distribution = el(doc, "select", { name: "distribution" });
  distribution.appendChild(el(doc, "option", { value: "normal" }, "truncated normal"));
  distribution.appendChild(el(doc, "option", { value: "uniform" }, "uniform"));
  const mode = el(doc, "select", { name: "mode" });
  mode.appendChild(el(doc, "option", { value: "simulate" }, "simulate"));
  mode.appendChild(el(doc, "option", { value: "exact" }, "exact (point only)"));
  const returnData = el(doc, "input", { type: "checkbox", name: "returnData" });

  const pointFields = el(doc, "div", { class: "fields", "data-kind": "point" });
  pointFields.appendChild(labeled(doc, "plausible d", d));
  const intervalFields = el(doc, "div", { class: "fields hidden", "data-kind": "interval" });
  intervalFields.appendChild(labeled(doc, "lower", lower));
  intervalFields.appendChild(labeled(doc, "upper", upper));
  intervalFields.appendChild(labeled(doc, "density", distribution));
  intervalFields.appendChild(labeled(doc, "k (sd / length)", k));
  const drawsToggle = el(doc, "label", { class: "field" });
  drawsToggle.appendChild(el(doc, "span", {}, "per-draw table"));
  drawsToggle.appendChild(returnData);
  intervalFields.appendChild(drawsToggle);

  const shared = el(doc, "div", { class: "fields" });
  shared.appendChild(labeled(doc, "n1", n1));
  shared.appendChild(labeled(doc, "n2", n2));
  shared.appendChild(labeled(doc, "seed", seed));
  shared.appendChild(labeled(doc, "mode", mode));

  root.appendChild(labeled(doc, "effect prior", kind));
  root.appendChild(pointFields);
  root.appendChild(intervalFields);
  root.appendChild(shared);

  const runButton = el(doc, "button", { type: "button" }, "Run");
  root.appendChild(runButton);
  const sketch = el(doc, "div", { class: "prior-box" });
  root.appendChild(sketch);
  const result = el(doc, "div", { class: "status", id: "retrospective-result" }, "—");
  root.appendChild(result);
  const draws = el(doc, "div", { class: "draws" });
  root.appendChild(draws);
  container.appendChild(root);

  function refreshKind() {
    const interval = kind.value === "interval";
    intervalFields.classList.toggle("hidden", !interval);
    pointFields.classList.toggle("hidden", interval);
    sketch.textContent = "";
    if (interval) {
      renderPriorSketch(
        sketch, Number(lower.value), Number(upper.value),
        distribution.value as "uniform" | "normal", Number(k.value),
      );
    }
  }

  function showError(err: unknown) {
    if (isAbort(err)) return;
    result.classList.add("error");
    result.textContent = err instanceof Error ? err.message : String(err);
  }

  async function run(): Promise<void> {
    draws.textContent = "";
    result.classList.remove("error");
    const usedMode = mode.value as Mode;
    const nn1 = Number(n1.value);
    const nn2 = Number(n2.value);
    try {
      if (kind.value === "point" && nn1 === nn2 && usedMode !== "exact") {
        const body: Record<string, unknown> = {
          d: Number(d.value), n: nn1, mode: usedMode,
        };
        if (seed.value !== "") body["seed"] = Number(seed.value);
        const envelope = await client.retrospective(body as never);
        result.textContent =
          `${fmtTriple(envelope.result)} · ${usedMode} · ${fmtSeed(envelope.seed)}`;
        store.record(`retrospective d=${d.value} n=${nn1}`, "/retrospective",
                     envelope, tripleSummary);
        return;
      }
      const body: DesignEstRequest = { n1: nn1, n2: nn2, mode: usedMode };
      let label: string;
      if (kind.value === "point") {
        body.targetD = Number(d.value);
        label = `design-est d=${d.value} n=${nn1}/${nn2}`;
      } else {
        body.limits = [Number(lower.value), Number(upper.value)];
        body.distribution = distribution.value as "uniform" | "normal";
        body.k = Number(k.value);
        body.returnData = returnData.checked;
        label = `design-est [${lower.value}, ${upper.value}] n=${nn1}/${nn2}`;
      }
      if (seed.value !== "" && usedMode === "simulate") body.seed = Number(seed.value);
      const envelope = await client.designEst(body);
      result.textContent =
        `${fmtTriple(envelope.result)} · ${usedMode} · ${fmtSeed(envelope.seed)}`;
      store.record(label, "/design-est", envelope, tripleSummary);
      const table = envelope.result.data;
      if (table) {
        const byName = Object.fromEntries(table.columns.map((name, i) => [name, i]));
        for (const column of ["power", "type_s", "type_m"]) {
          renderHistogram(
            draws, table.rows.map((row) => row[byName[column]]), column,
          );
        }
      }
    } catch (err) {
      showError(err);
    }
  }

  const panel: RetrospectivePanel = {
    element: root,
    run,
    setSampleSizes(n: number) {
      n1.value = String(n);
      n2.value = String(n);
    },
    kindSelect: kind,
    inputs: { d, n1, n2, lower, upper, k, seed },
    distributionSelect: distribution,
    modeSelect: mode,
    returnData,
    resultBox: result,
    drawsBox: draws,
  };

  kind.addEventListener("change", refreshKind);
  for (const input of [lower, upper, k]) input.addEventListener("change", refreshKind);
  distribution.addEventListener("change", refreshKind);
  runButton.addEventListener("click", () => void run());
  return panel;
}

// ----------------------------------------------------------------- sensitivity

export interface SensitivityPanel {
  element: HTMLElement;
  run(): Promise<void>;
  gridInput: HTMLInputElement;
  dInput: HTMLInputElement;
  modeSelect: HTMLSelectElement;
  chartBox: HTMLElement;
  statusBox: HTMLElement;
  lastRows: SensitivityRow[];
}

export function mountSensitivityPanel(
  container: HTMLElement,
  client: ApiClient,
  store: ScenarioStore,
  onPick: (n: number) => void,
): SensitivityPanel {
  const doc = container.ownerDocument;
  const root = el(doc, "section", { class: "panel", id: "sensitivity-panel" });
  root.appendChild(el(doc, "h2", {}, "Sensitivity: risks across sample sizes"));

  const d = numberInput(doc, "d", "0.35", "0.05");
  const grid = el(doc, "input", {
    type: "text", name: "nGrid", value: "10, 20, 48, 100, 200, 500",
  });
  const seed = el(doc, "input", { type: "number", name: "seed", placeholder: "random" });
  const mode = el(doc, "select", { name: "mode" });
  mode.appendChild(el(doc, "option", { value: "exact" }, "exact"));
  mode.appendChild(el(doc, "option", { value: "simulate" }, "simulate"));

  const form = el(doc, "div", { class: "fields" });
  form.appendChild(labeled(doc, "plausible d", d));
  form.appendChild(labeled(doc, "n grid", grid));
  form.appendChild(labeled(doc, "seed", seed));
  form.appendChild(labeled(doc, "mode", mode));
  root.appendChild(form);

  const runButton = el(doc, "button", { type: "button" }, "Draw curves");
  root.appendChild(runButton);
  const status = el(doc, "div", { class: "status" },
                    "click a point to load that n into the retrospective panel");
  const chart = el(doc, "div", { class: "chart-box" });
  root.appendChild(status);
  root.appendChild(chart);
  container.appendChild(root);

  function parseGrid(text: string): number[] {
    const values = text.split(",").map((part) => Number(part.trim())).filter((x) => !Number.isNaN(x));
    return values.filter((x) => Number.isInteger(x) && x >= 2);
  }

  const panel: SensitivityPanel = {
    element: root,
    async run() {
      const nGrid = parseGrid(grid.value);
      if (nGrid.length === 0) {
        status.classList.add("error");
        status.textContent = "the n grid needs at least one integer size of 2 or more";
        return;
      }
      const body: Record<string, unknown> = {
        d: Number(d.value), nGrid, mode: mode.value,
      };
      if (seed.value !== "" && mode.value === "simulate") body["seed"] = Number(seed.value);
      try {
        const envelope = await client.sensitivity(body as never);
        panel.lastRows = envelope.result.rows;
        renderChart(chart, envelope.result.rows, onPick);
        status.classList.remove("error");
        status.textContent =
          `${envelope.result.rows.length} designs · ${mode.value} · ${fmtSeed(envelope.seed)}`;
        store.record(`sensitivity d=${d.value}`, "/sensitivity", envelope,
                     (result) => `${(result as { rows: SensitivityRow[] }).rows.length} grid points`);
      } catch (err) {
        if (isAbort(err)) return;
        status.classList.add("error");
        status.textContent = err instanceof Error ? err.message : String(err);
      }
    },
    gridInput: grid,
    dInput: d,
    modeSelect: mode,
    chartBox: chart,
    statusBox: status,
    lastRows: [],
  };

  runButton.addEventListener("click", () => void panel.run());
  const submitDisabled = () => {
    runButton.toggleAttribute("disabled", parseGrid(grid.value).length === 0);
  };
  grid.addEventListener("input", submitDisabled);
  return panel;
}

// ----------------------------------------------------------------------- cards

export function renderCards(container: HTMLElement, store: ScenarioStore): void {
  const doc = container.ownerDocument;
  container.textContent = "";
  container.appendChild(el(doc, "h2", {}, "Scenario cards"));
  for (const card of store.cards) {
    const box = el(doc, "article", { class: "card", "data-card-id": String(card.id) });
    const head = el(doc, "header", {});
    head.appendChild(el(doc, "strong", {}, card.label));
    head.appendChild(el(doc, "span", { class: "badge" }, card.mode));
    if (card.pinned) head.appendChild(el(doc, "span", { class: "badge pinned" }, "pinned"));
    box.appendChild(head);
    box.appendChild(el(doc, "div", { class: "card-summary" }, card.summary));
    box.appendChild(el(doc, "div", { class: "card-seed" }, fmtSeed(card.seed)));

    const actions = el(doc, "div", { class: "card-actions" });
    const pin = el(doc, "button", { type: "button" }, card.pinned ? "unpin" : "pin");
    pin.addEventListener("click", () => store.togglePin(card.id));
    const rerun = el(doc, "button", { type: "button" }, "re-run");
    rerun.addEventListener("click", () => {
      void store
        .rerun(card.id, card.endpoint === "/prospective" ? prospectiveSummary : tripleSummary)
        .then((reproduced) => {
          // the rerun re-rendered the list; mark the card's live element
          const live = container.querySelector(`[data-card-id="${card.id}"]`);
          live?.setAttribute("data-reproduced", String(reproduced));
        });
    });
    const copy = el(doc, "button", { type: "button" }, "copy JSON");
    copy.addEventListener("click", () => {
      void container.ownerDocument.defaultView?.navigator.clipboard?.writeText(
        store.toJson(card.id),
      );
    });
    actions.appendChild(pin);
    actions.appendChild(rerun);
    actions.appendChild(copy);
    box.appendChild(actions);
    container.appendChild(box);
  }
}
