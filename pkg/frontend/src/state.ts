// Pure helpers over the mirrored assessment document, plus the small store
// the panels subscribe to. Edits happen on a local copy and reach the
// service only through PUT (revision-guarded) or the adopt buttons.

import type { AssessmentDoc, CostDoc, FactorDoc, ReportDoc } from "./types.js";

export function activeFactors(doc: AssessmentDoc): FactorDoc[] {
  return doc.factors.filter((f) => !f.tailored_out);
}

/** Slider values for the active factors, in declaration order. */
export function currentScores(doc: AssessmentDoc): number[] {
  return activeFactors(doc).map((f) => f.implementation_score);
}

/** New document with the active factors' scores replaced, order-aligned. */
export function adoptScores(doc: AssessmentDoc, scores: number[]): AssessmentDoc {
  const active = activeFactors(doc);
  if (scores.length !== active.length) {
    throw new Error(`expected ${active.length} scores, got ${scores.length}`);
  }
  const byId = new Map(active.map((f, i) => [f.id, scores[i]]));
  return {
    ...doc,
    factors: doc.factors.map((f) =>
      byId.has(f.id) ? { ...f, implementation_score: byId.get(f.id)! } : { ...f },
    ),
  };
}

export interface EditIssue {
  field: string;
  message: string;
}

/** Client-side checks mirroring the service's validation; the service
 * re-validates on PUT regardless. */
export function localIssues(doc: AssessmentDoc): EditIssue[] {
  const issues: EditIssue[] = [];
  const factorIds = new Set<string>();
  for (const f of doc.factors) {
    if (factorIds.has(f.id)) issues.push({ field: `factor ${f.id}`, message: "duplicate id" });
    factorIds.add(f.id);
    if (f.implementation_score < 0 || f.implementation_score > 1) {
      issues.push({ field: `factor ${f.id}`, message: "score must lie in [0, 1]" });
    }
    if (f.max_cost < 0) {
      issues.push({ field: `factor ${f.id}`, message: "cost must be >= 0" });
    }
    for (const domain of ["proactive", "reactive"] as const) {
      for (const value of Object.values(f.base_weights[domain])) {
        if (!Number.isInteger(value) || value < 0 || value > 5) {
          issues.push({ field: `factor ${f.id}`, message: "weights must be integers 0..5" });
        }
      }
    }
    if (f.tailored_out && !(f.tailoring_justification ?? "").trim()) {
      issues.push({ field: `factor ${f.id}`, message: "tailoring needs a justification" });
    }
  }
  const targetIds = new Set<string>();
  for (const t of doc.targets) {
    if (targetIds.has(t.id)) issues.push({ field: `target ${t.id}`, message: "duplicate id" });
    targetIds.add(t.id);
    if (!Number.isInteger(t.raw_value) || t.raw_value < 1 || t.raw_value > 100) {
      issues.push({ field: `target ${t.id}`, message: "value must be an integer 1..100" });
    }
  }
  for (const [targetId, row] of Object.entries(doc.mapping)) {
    if (!targetIds.has(targetId)) {
      issues.push({ field: `mapping ${targetId}`, message: "unknown target id" });
    }
    for (const [efId, level] of Object.entries(row)) {
      if (!factorIds.has(efId)) {
        issues.push({ field: `mapping ${targetId}/${efId}`, message: "unknown factor id" });
      }
      if (!Number.isInteger(level) || level < 0 || level > 5) {
        issues.push({ field: `mapping ${targetId}/${efId}`, message: "levels are integers 0..5" });
      }
    }
  }
  if (activeFactors(doc).length === 0) {
    issues.push({ field: "factors", message: "at least one active factor required" });
  }
  if (doc.targets.length === 0) {
    issues.push({ field: "targets", message: "at least one target required" });
  }
  return issues;
}

export type Banner =
  | { kind: "idle" }
  | { kind: "offline"; detail: string }
  | { kind: "conflict"; serverRevision: number }
  | { kind: "invalid"; issues: string[] }
  | { kind: "info"; detail: string };

export interface UiModel {
  revision: number;
  doc: AssessmentDoc | null;
  dirty: boolean;
  report: ReportDoc | null;
  cost: CostDoc | null;
  whatIfScores: number[] | null;
  whatIfReport: ReportDoc | null;
  whatIfCost: CostDoc | null;
  banner: Banner;
}

export type Listener = (model: UiModel) => void;

export class Store {
  private model: UiModel = {
    revision: 0,
    doc: null,
    dirty: false,
    report: null,
    cost: null,
    whatIfScores: null,
    whatIfReport: null,
    whatIfCost: null,
    banner: { kind: "idle" },
  };
  private listeners: Listener[] = [];

  get current(): UiModel {
    return this.model;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  update(patch: Partial<UiModel>): void {
    this.model = { ...this.model, ...patch };
    for (const listener of this.listeners) {
      listener(this.model);
    }
  }

  /** Server state replaces local edits; what-if overlays reset. */
  loadServerState(revision: number, doc: AssessmentDoc): void {
    this.update({
      revision,
      doc,
      dirty: false,
      whatIfScores: null,
      whatIfReport: null,
      whatIfCost: null,
      banner: { kind: "idle" },
    });
  }

  editDoc(mutate: (doc: AssessmentDoc) => AssessmentDoc): void {
    if (!this.model.doc) return;
    this.update({ doc: mutate(this.model.doc), dirty: true });
  }
}
