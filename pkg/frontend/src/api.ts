// Thin typed client over the /api endpoints. The fetch function is injected
// so tests can drive it without a network.

import type {
  AssessmentDoc,
  AssessmentEnvelope,
  CatalogDoc,
  EvaluationEnvelope,
  OptimizeResultDoc,
  SurfaceDoc,
  SweepDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly issues: string[] = [],
  ) {
    super(message);
  }
}

export class RevisionConflict extends ApiError {
  constructor(readonly serverRevision: number) {
    super(409, `revision conflict; server is at revision ${serverRevision}`);
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export interface SweepRequest {
  ef_id: string;
  steps?: number;
  baseline?: number[];
}

export interface SurfaceRequest {
  ef_x: string;
  ef_y: string;
  fixed?: number[];
  resolution?: number;
  min_score?: number;
}

export interface OptimizeRequest {
  strategy?: "grid" | "descent";
  min_score?: number;
  grid_step?: number;
  max_iterations?: number;
  restarts?: number;
  seed?: number;
}

export interface OptimizeStatus {
  running: boolean;
  evaluations: number;
  best_ratio: number | "inf" | null;
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const payload = await response.json().catch(() => ({}));
    if (response.status === 409) {
      throw new RevisionConflict((payload as { revision: number }).revision);
    }
    if (!response.ok) {
      const doc = payload as { error?: string; issues?: string[] };
      throw new ApiError(response.status, doc.error ?? response.statusText, doc.issues ?? []);
    }
    return payload as T;
  }

  getAssessment(): Promise<AssessmentEnvelope> {
    return this.request("GET", "/api/assessment");
  }

  putAssessment(revision: number, assessment: AssessmentDoc): Promise<{ revision: number }> {
    return this.request("PUT", "/api/assessment", { revision, assessment });
  }

  evaluate(): Promise<EvaluationEnvelope> {
    return this.request("POST", "/api/evaluate", {});
  }

  whatIf(scores: number[]): Promise<EvaluationEnvelope> {
    return this.request("POST", "/api/whatif", { scores });
  }

  sweep(request: SweepRequest): Promise<SweepDoc> {
    return this.request("POST", "/api/sweep", request);
  }

  surface(request: SurfaceRequest): Promise<SurfaceDoc> {
    return this.request("POST", "/api/surface", request);
  }

  optimize(request: OptimizeRequest): Promise<{ result: OptimizeResultDoc }> {
    return this.request("POST", "/api/optimize", request);
  }

  optimizeStatus(): Promise<OptimizeStatus> {
    return this.request("GET", "/api/optimize/status");
  }

  save(revision: number): Promise<{ saved: string; revision: number }> {
    return this.request("POST", "/api/save", { revision });
  }

  catalog(): Promise<CatalogDoc> {
    return this.request("GET", "/api/catalog");
  }
}
