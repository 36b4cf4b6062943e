// Wire types mirroring the service's JSON documents. The UI never computes
// scores: every number rendered comes from one of these payloads.

export type AttributeCode = "C" | "I" | "A";
export type DomainName = "proactive" | "reactive";

export const ATTRIBUTES: AttributeCode[] = ["C", "I", "A"];
export const DOMAINS: DomainName[] = ["proactive", "reactive"];

/** Fixed display order: C, I, A crossed with proactive, reactive. */
export const COMPONENTS: [AttributeCode, DomainName][] = ATTRIBUTES.flatMap(
  (attribute) => DOMAINS.map((domain): [AttributeCode, DomainName] => [attribute, domain]),
);

export type ComponentGrid = Record<AttributeCode, Record<DomainName, number>>;

export interface WeightsDoc {
  proactive: Record<AttributeCode, number>;
  reactive: Record<AttributeCode, number>;
}

export interface FactorDoc {
  id: string;
  name: string;
  category: string;
  base_weights: WeightsDoc;
  max_cost: number;
  implementation_score: number;
  tailored_out: boolean;
  tailoring_justification: string | null;
}

export interface TargetDoc {
  id: string;
  name: string;
  kind: "Asset" | "Task";
  raw_value: number;
}

export interface ThresholdDoc {
  scope: "factor" | "target" | "category";
  minimum: number;
  factor_id?: string;
  target_id?: string;
  category?: string;
  attribute?: AttributeCode;
  domain?: DomainName;
}

export interface AssessmentDoc {
  schema_version: number;
  name: string;
  factors: FactorDoc[];
  targets: TargetDoc[];
  mapping: Record<string, Record<string, number>>;
  selected_components: { attribute: AttributeCode; domain: DomainName }[];
  thresholds: ThresholdDoc[];
}

export interface VerdictDoc {
  threshold: ThresholdDoc;
  passed: boolean;
  observed: number;
}

export interface ReportDoc {
  relative_weights: Record<string, Record<string, ComponentGrid>>;
  protection: Record<string, ComponentGrid>;
  final_scores: ComponentGrid;
  coverage: Record<string, ComponentGrid>;
  total_coverage: ComponentGrid;
  threshold_verdicts: VerdictDoc[];
}

/** Infinite ratios travel as the string "inf". */
export type WireNumber = number | "inf";

export interface CostDoc {
  per_factor_cost: Record<string, number>;
  total_cost: number;
  tc_sel: number;
  efficiency_ratio: WireNumber;
}

export interface SweepSampleDoc {
  score: number;
  total_coverage: ComponentGrid;
}

export interface SweepDoc {
  ef_id: string;
  baseline_scores: number[];
  samples: SweepSampleDoc[];
}

export interface SurfaceDoc {
  ef_x: string;
  ef_y: string;
  fixed_scores: number[];
  x_scores: number[];
  y_scores: number[];
  grid: WireNumber[][];
}

export interface OptimizeResultDoc {
  best_scores: number[];
  best_ratio: WireNumber;
  evaluations: number;
  trace: [number, WireNumber][] | null;
}

export interface AssessmentEnvelope {
  revision: number;
  assessment: AssessmentDoc;
}

export interface EvaluationEnvelope {
  revision: number;
  report: ReportDoc;
  cost: CostDoc;
}

export interface CatalogLevelDoc {
  label: string;
  description: string;
  guideline_score: number;
}

export interface CatalogEntryDoc {
  id: string;
  name: string;
  category: string;
  levels: CatalogLevelDoc[];
}

export interface CatalogDoc {
  schema_version: number;
  catalog: CatalogEntryDoc[];
}
