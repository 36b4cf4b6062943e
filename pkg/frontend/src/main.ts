// Panel wiring for the single-page UI. All numbers shown come from service
// responses; this file only moves them into the DOM.

import { ApiClient, ApiError, RevisionConflict } from "./api.js";
import { surfaceView, sweepSeries } from "./chartdata.js";
import { heatmapSvg, lineChartSvg } from "./charts.js";
import { debounce, latestWins } from "./debounce.js";
import { componentLabel, fmt2, fmtFull, fmtMoney, fmtRatio } from "./format.js";
import { activeFactors, adoptScores, currentScores, localIssues, Store } from "./state.js";
import {
  ATTRIBUTES,
  COMPONENTS,
  DOMAINS,
  type AssessmentDoc,
  type CostDoc,
  type ReportDoc,
} from "./types.js";

const api = new ApiClient("");
const store = new Store();

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function setBanner(kind: "ok" | "error" | "conflict" | "hidden", text = ""): void {
  const banner = el<HTMLDivElement>("banner");
  banner.className = kind === "hidden" ? "banner hidden" : `banner ${kind}`;
  banner.textContent = text;
}

function reportFailure(err: unknown): void {
  if (err instanceof RevisionConflict) {
    setBanner(
      "conflict",
      `Someone else changed the assessment (server revision ${err.serverRevision}). Reload to continue.`,
    );
  } else if (err instanceof ApiError) {
    const issueText = err.issues.length ? `: ${err.issues.join("; ")}` : "";
    setBanner("error", `${err.message}${issueText}`);
  } else {
    setBanner("error", `Service unreachable: ${String(err)}`);
  }
}

// ---------------------------------------------------------------------------
// editor

function numberInput(value: number, min: number, max: number, step: number,
                     onChange: (v: number) => void): HTMLInputElement {
  const input = document.createElement("input");
  input.type = "number";
  input.min = String(min);
  input.max = String(max);
  input.step = String(step);
  input.value = String(value);
  input.addEventListener("change", () => {
    const parsed = Number(input.value);
    input.classList.toggle("bad", Number.isNaN(parsed) || parsed < min || parsed > max);
    onChange(parsed);
  });
  return input;
}

function renderTargets(doc: AssessmentDoc): void {
  const table = el<HTMLTableElement>("targets-table");
  table.innerHTML =
    "<tr><th>id</th><th>name</th><th>kind</th><th>value (1..100)</th><th></th></tr>";
  doc.targets.forEach((target, index) => {
    const row = table.insertRow();
    row.insertCell().textContent = target.id;
    const nameInput = document.createElement("input");
    nameInput.value = target.name;
    nameInput.addEventListener("change", () =>
      store.editDoc((d) => ({
        ...d,
        targets: d.targets.map((t, i) => (i === index ? { ...t, name: nameInput.value } : t)),
      })),
    );
    row.insertCell().append(nameInput);
    const kind = document.createElement("select");
    for (const option of ["Asset", "Task"]) {
      const o = document.createElement("option");
      o.value = o.textContent = option;
      kind.append(o);
    }
    kind.value = target.kind;
    kind.addEventListener("change", () =>
      store.editDoc((d) => ({
        ...d,
        targets: d.targets.map((t, i) =>
          i === index ? { ...t, kind: kind.value as "Asset" | "Task" } : t,
        ),
      })),
    );
    row.insertCell().append(kind);
    row.insertCell().append(
      numberInput(target.raw_value, 1, 100, 1, (value) =>
        store.editDoc((d) => ({
          ...d,
          targets: d.targets.map((t, i) => (i === index ? { ...t, raw_value: value } : t)),
        })),
      ),
    );
    const remove = document.createElement("button");
    remove.textContent = "remove";
    remove.addEventListener("click", () =>
      store.editDoc((d) => {
        const mapping = { ...d.mapping };
        delete mapping[target.id];
        return { ...d, mapping, targets: d.targets.filter((_, i) => i !== index) };
      }),
    );
    row.insertCell().append(remove);
  });
}

function renderFactors(doc: AssessmentDoc): void {
  const table = el<HTMLTableElement>("factors-table");
  table.innerHTML =
    "<tr><th>id</th><th>name</th><th>category</th>" +
    DOMAINS.map((d) => ATTRIBUTES.map((a) => `<th>${a}/${d[0]}</th>`).join("")).join("") +
    "<th>max cost</th><th>score</th><th>tailored out</th><th>justification</th></tr>";
  doc.factors.forEach((factor, index) => {
    const row = table.insertRow();
    row.insertCell().textContent = factor.id;
    const nameInput = document.createElement("input");
    nameInput.value = factor.name;
    nameInput.addEventListener("change", () =>
      store.editDoc((d) => ({
        ...d,
        factors: d.factors.map((f, i) => (i === index ? { ...f, name: nameInput.value } : f)),
      })),
    );
    row.insertCell().append(nameInput);
    row.insertCell().textContent = factor.category;
    for (const domain of DOMAINS) {
      for (const attribute of ATTRIBUTES) {
        row.insertCell().append(
          numberInput(factor.base_weights[domain][attribute], 0, 5, 1, (value) =>
            store.editDoc((d) => ({
              ...d,
              factors: d.factors.map((f, i) =>
                i === index
                  ? {
                      ...f,
                      base_weights: {
                        ...f.base_weights,
                        [domain]: { ...f.base_weights[domain], [attribute]: value },
                      },
                    }
                  : f,
              ),
            })),
          ),
        );
      }
    }
    row.insertCell().append(
      numberInput(factor.max_cost, 0, 10 ** 9, 100, (value) =>
        store.editDoc((d) => ({
          ...d,
          factors: d.factors.map((f, i) => (i === index ? { ...f, max_cost: value } : f)),
        })),
      ),
    );
    row.insertCell().append(
      numberInput(factor.implementation_score, 0, 1, 0.01, (value) =>
        store.editDoc((d) => ({
          ...d,
          factors: d.factors.map((f, i) =>
            i === index ? { ...f, implementation_score: value } : f,
          ),
        })),
      ),
    );
    const tailored = document.createElement("input");
    tailored.type = "checkbox";
    tailored.checked = factor.tailored_out;
    const justification = document.createElement("input");
    justification.value = factor.tailoring_justification ?? "";
    justification.placeholder = "required when tailored out";
    const syncTailoring = () => {
      const missing = tailored.checked && !justification.value.trim();
      justification.classList.toggle("bad", missing);
      if (missing) {
        setBanner("error", `Tailoring ${factor.id} out needs a justification.`);
        return;
      }
      store.editDoc((d) => ({
        ...d,
        factors: d.factors.map((f, i) =>
          i === index
            ? {
                ...f,
                tailored_out: tailored.checked,
                tailoring_justification: justification.value.trim() || null,
              }
            : f,
        ),
      }));
    };
    tailored.addEventListener("change", syncTailoring);
    justification.addEventListener("change", syncTailoring);
    row.insertCell().append(tailored);
    row.insertCell().append(justification);
  });
}

function renderMapping(doc: AssessmentDoc): void {
  const table = el<HTMLTableElement>("mapping-table");
  const header = table.insertRow();
  table.innerHTML = "";
  header.remove();
  const head = table.insertRow();
  head.insertCell().textContent = "target \\ factor";
  for (const factor of doc.factors) {
    head.insertCell().textContent = factor.id;
  }
  for (const target of doc.targets) {
    const row = table.insertRow();
    row.insertCell().textContent = target.id;
    for (const factor of doc.factors) {
      const level = doc.mapping[target.id]?.[factor.id] ?? 0;
      row.insertCell().append(
        numberInput(level, 0, 5, 1, (value) =>
          store.editDoc((d) => {
            const mapping = { ...d.mapping, [target.id]: { ...(d.mapping[target.id] ?? {}) } };
            if (value === 0) {
              delete mapping[target.id][factor.id];
            } else {
              mapping[target.id][factor.id] = value;
            }
            return { ...d, mapping };
          }),
        ),
      );
    }
  }
}

// ---------------------------------------------------------------------------
// score + cost panels

function componentGridHtml(title: string, grid: ReportDoc["final_scores"]): string {
  const cells = COMPONENTS.map(([attribute, domain]) => {
    const value = grid[attribute][domain];
    return (
      `<div class="cell"><span class="label">${componentLabel(attribute, domain)}</span>` +
      `<span class="value" title="${fmtFull(value)}">${fmt2(value)}</span></div>`
    );
  }).join("");
  return `<h3>${title}</h3><div class="component-grid">${cells}</div>`;
}

function renderEvaluation(report: ReportDoc | null, cost: CostDoc | null): void {
  const panel = el<HTMLDivElement>("scores-panel");
  if (!report || !cost) {
    panel.innerHTML = '<p class="empty">Evaluate to see scores.</p>';
    return;
  }
  const verdicts = report.threshold_verdicts
    .map((v) => {
      const state = v.passed ? "pass" : "fail";
      return `<li class="${state}">${state}: observed ${fmt2(v.observed)} vs minimum ${fmt2(v.threshold.minimum)} (${v.threshold.scope})</li>`;
    })
    .join("");
  panel.innerHTML =
    componentGridHtml("Final scores", report.final_scores) +
    componentGridHtml("Total coverage", report.total_coverage) +
    `<p>Total cost <b title="${fmtFull(cost.total_cost)}">${fmtMoney(cost.total_cost)}</b>, ` +
    `selected coverage <b title="${fmtFull(cost.tc_sel)}">${fmt2(cost.tc_sel)}</b>, ` +
    `efficiency ratio <b title="${fmtFull(cost.efficiency_ratio)}">${fmtRatio(cost.efficiency_ratio)}</b></p>` +
    (verdicts ? `<h3>Thresholds</h3><ul class="verdicts">${verdicts}</ul>` : "");
}

// ---------------------------------------------------------------------------
// what-if panel

const runWhatIf = latestWins((scores: number[]) => api.whatIf(scores));

const debouncedWhatIf = debounce(async (scores: number[]) => {
  try {
    const result = await runWhatIf(scores);
    if (result) {
      store.update({
        whatIfScores: scores,
        whatIfReport: result.report,
        whatIfCost: result.cost,
        banner: { kind: "idle" },
      });
      setBanner("hidden");
    }
  } catch (err) {
    // Never leave stale numbers on screen: blank the panel on failure.
    store.update({ whatIfReport: null, whatIfCost: null });
    reportFailure(err);
  }
}, 150);

function renderWhatIf(doc: AssessmentDoc): void {
  const sliders = el<HTMLDivElement>("whatif-sliders");
  sliders.innerHTML = "";
  const active = activeFactors(doc);
  const model = store.current;
  const values = model.whatIfScores ?? currentScores(doc);
  active.forEach((factor, index) => {
    const label = document.createElement("label");
    label.textContent = `${factor.id} (${factor.name})`;
    const slider = document.createElement("input");
    slider.type = "range";
    slider.min = "0";
    slider.max = "1";
    slider.step = "0.01";
    slider.value = String(values[index]);
    const readout = document.createElement("span");
    readout.textContent = fmt2(values[index]);
    slider.addEventListener("input", () => {
      readout.textContent = fmt2(Number(slider.value));
      const scores = [...sliders.querySelectorAll("input[type=range]")].map((node) =>
        Number((node as HTMLInputElement).value),
      );
      debouncedWhatIf(scores);
    });
    const rowDiv = document.createElement("div");
    rowDiv.className = "slider-row";
    rowDiv.append(label, slider, readout);
    sliders.append(rowDiv);
  });
}

function renderWhatIfNumbers(): void {
  const panel = el<HTMLDivElement>("whatif-numbers");
  const { whatIfReport, whatIfCost } = store.current;
  if (!whatIfReport || !whatIfCost) {
    panel.innerHTML = '<p class="empty">Drag a slider to preview scores and costs.</p>';
    return;
  }
  const perFactor = Object.entries(whatIfCost.per_factor_cost)
    .map(
      ([id, value]) =>
        `<div class="cell"><span class="label">${id}</span>` +
        `<span class="value" title="${fmtFull(value)}">${fmtMoney(value)}</span></div>`,
    )
    .join("");
  panel.innerHTML =
    componentGridHtml("Final scores (what-if)", whatIfReport.final_scores) +
    componentGridHtml("Total coverage (what-if)", whatIfReport.total_coverage) +
    `<h3>Cost</h3><div class="component-grid">${perFactor}</div>` +
    `<p>Total <b title="${fmtFull(whatIfCost.total_cost)}">${fmtMoney(whatIfCost.total_cost)}</b>, ` +
    `efficiency ratio <b title="${fmtFull(whatIfCost.efficiency_ratio)}">${fmtRatio(whatIfCost.efficiency_ratio)}</b></p>`;
}

// ---------------------------------------------------------------------------
// charts panel

async function refreshSweep(): Promise<void> {
  const doc = store.current.doc;
  if (!doc) return;
  const efId = el<HTMLSelectElement>("sweep-ef").value;
  const steps = Number(el<HTMLInputElement>("sweep-steps").value) || 11;
  try {
    const payload = await api.sweep({ ef_id: efId, steps });
    el<HTMLDivElement>("sweep-chart").innerHTML = lineChartSvg(sweepSeries(payload));
  } catch (err) {
    reportFailure(err);
  }
}

async function refreshSurface(): Promise<void> {
  const doc = store.current.doc;
  if (!doc) return;
  const x = el<HTMLSelectElement>("surface-x").value;
  const y = el<HTMLSelectElement>("surface-y").value;
  if (x === y) {
    setBanner("error", "Pick two different factors for the surface axes.");
    return;
  }
  const resolution = Number(el<HTMLInputElement>("surface-resolution").value) || 11;
  const fixedScore = Number(el<HTMLInputElement>("surface-fixed").value);
  const minScore = Number(el<HTMLInputElement>("surface-min").value) || 0;
  const fixed = activeFactors(doc).map(() => fixedScore);
  try {
    const payload = await api.surface({
      ef_x: x, ef_y: y, fixed, resolution, min_score: minScore,
    });
    el<HTMLDivElement>("surface-chart").innerHTML = heatmapSvg(surfaceView(payload));
  } catch (err) {
    reportFailure(err);
  }
}

function renderChartControls(doc: AssessmentDoc): void {
  for (const id of ["sweep-ef", "surface-x", "surface-y"]) {
    const select = el<HTMLSelectElement>(id);
    const previous = select.value;
    select.innerHTML = "";
    for (const factor of activeFactors(doc)) {
      const option = document.createElement("option");
      option.value = option.textContent = factor.id;
      select.append(option);
    }
    if ([...select.options].some((o) => o.value === previous)) {
      select.value = previous;
    }
  }
  const surfaceY = el<HTMLSelectElement>("surface-y");
  if (surfaceY.options.length > 1 && surfaceY.value === el<HTMLSelectElement>("surface-x").value) {
    surfaceY.selectedIndex = 1;
  }
}

// ---------------------------------------------------------------------------
// optimizer panel

async function runOptimizer(): Promise<void> {
  const resultPanel = el<HTMLDivElement>("opt-result");
  resultPanel.innerHTML = '<p class="empty">Optimizing...</p>';
  const poll = setInterval(async () => {
    try {
      const status = await api.optimizeStatus();
      if (status.running) {
        resultPanel.innerHTML = `<p class="empty">Optimizing... ${status.evaluations} evaluations</p>`;
      }
    } catch {
      // polling is best-effort
    }
  }, 250);
  try {
    const request = {
      strategy: el<HTMLSelectElement>("opt-strategy").value as "grid" | "descent",
      min_score: Number(el<HTMLInputElement>("opt-min").value),
      grid_step: Number(el<HTMLInputElement>("opt-step").value),
      seed: Number(el<HTMLInputElement>("opt-seed").value) || 0,
    };
    const { result } = await api.optimize(request);
    const doc = store.current.doc;
    const ids = doc ? activeFactors(doc).map((f) => f.id) : [];
    const rows = result.best_scores
      .map(
        (score, i) =>
          `<div class="cell"><span class="label">${ids[i] ?? `#${i + 1}`}</span>` +
          `<span class="value" title="${fmtFull(score)}">${fmt2(score)}</span></div>`,
      )
      .join("");
    resultPanel.innerHTML =
      `<div class="component-grid">${rows}</div>` +
      `<p>Efficiency ratio <b title="${fmtFull(result.best_ratio)}">${fmtRatio(result.best_ratio)}</b> ` +
      `after ${result.evaluations} evaluations.</p>`;
    el<HTMLButtonElement>("opt-adopt").dataset.scores = JSON.stringify(result.best_scores);
    el<HTMLButtonElement>("opt-adopt").disabled = false;
  } catch (err) {
    resultPanel.innerHTML = '<p class="empty">Optimization failed.</p>';
    reportFailure(err);
  } finally {
    clearInterval(poll);
  }
}

// ---------------------------------------------------------------------------
// server round trips

async function reloadFromServer(): Promise<void> {
  try {
    const envelope = await api.getAssessment();
    store.loadServerState(envelope.revision, envelope.assessment);
    const evaluation = await api.evaluate();
    store.update({ report: evaluation.report, cost: evaluation.cost });
    setBanner("hidden");
  } catch (err) {
    reportFailure(err);
  }
}

async function applyEdits(docOverride?: AssessmentDoc): Promise<void> {
  const model = store.current;
  const doc = docOverride ?? model.doc;
  if (!doc) return;
  const issues = localIssues(doc);
  if (issues.length) {
    setBanner("error", issues.map((i) => `${i.field}: ${i.message}`).join("; "));
    return;
  }
  try {
    await api.putAssessment(model.revision, doc);
    await reloadFromServer();
    setBanner("ok", "Changes applied.");
  } catch (err) {
    reportFailure(err);
  }
}

async function saveToDisk(): Promise<void> {
  try {
    const response = await api.save(store.current.revision);
    setBanner("ok", `Saved to ${response.saved}.`);
  } catch (err) {
    reportFailure(err);
  }
}

// ---------------------------------------------------------------------------
// boot

function renderAll(): void {
  const model = store.current;
  el<HTMLSpanElement>("revision-badge").textContent = `revision ${model.revision}${
    model.dirty ? " (edited)" : ""
  }`;
  if (!model.doc) return;
  el<HTMLSpanElement>("assessment-name").textContent = model.doc.name;
  renderTargets(model.doc);
  renderFactors(model.doc);
  renderMapping(model.doc);
  renderEvaluation(model.report, model.cost);
  renderWhatIf(model.doc);
  renderWhatIfNumbers();
  renderChartControls(model.doc);
}

export function boot(): void {
  store.subscribe(renderAll);
  el<HTMLButtonElement>("reload").addEventListener("click", () => void reloadFromServer());
  el<HTMLButtonElement>("apply-edits").addEventListener("click", () => void applyEdits());
  el<HTMLButtonElement>("save").addEventListener("click", () => void saveToDisk());
  el<HTMLButtonElement>("sweep-run").addEventListener("click", () => void refreshSweep());
  el<HTMLButtonElement>("surface-run").addEventListener("click", () => void refreshSurface());
  el<HTMLButtonElement>("opt-run").addEventListener("click", () => void runOptimizer());
  el<HTMLButtonElement>("whatif-adopt").addEventListener("click", () => {
    const model = store.current;
    if (model.doc && model.whatIfScores) {
      void applyEdits(adoptScores(model.doc, model.whatIfScores));
    }
  });
  el<HTMLButtonElement>("opt-adopt").addEventListener("click", () => {
    const model = store.current;
    const raw = el<HTMLButtonElement>("opt-adopt").dataset.scores;
    if (model.doc && raw) {
      void applyEdits(adoptScores(model.doc, JSON.parse(raw) as number[]));
    }
  });
  void reloadFromServer();
}

if (typeof document !== "undefined" && document.getElementById("banner")) {
  boot();
}
