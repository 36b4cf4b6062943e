// Reshape service payloads into chart-ready structures. Values pass through
// verbatim: the transforms here pick and arrange, they never recompute.

import { COMPONENTS, type SurfaceDoc, type SweepDoc, type WireNumber } from "./types.js";
import { componentLabel } from "./format.js";

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface SweepSeries {
  label: string;
  points: SeriesPoint[];
}

/** Six series (C/I/A x proactive/reactive) from one sweep payload. */
export function sweepSeries(doc: SweepDoc): SweepSeries[] {
  return COMPONENTS.map(([attribute, domain]) => ({
    label: componentLabel(attribute, domain),
    points: doc.samples.map((sample) => ({
      x: sample.score,
      y: sample.total_coverage[attribute][domain],
    })),
  }));
}

export interface SurfaceCell {
  x: number;
  y: number;
  value: WireNumber;
}

export interface SurfaceView {
  cells: SurfaceCell[];
  xScores: number[];
  yScores: number[];
  /** Index into cells of the smallest finite ratio, or null if none. */
  minIndex: number | null;
}

export function surfaceView(doc: SurfaceDoc): SurfaceView {
  const cells: SurfaceCell[] = [];
  let minIndex: number | null = null;
  let minValue = Infinity;
  doc.x_scores.forEach((x, i) => {
    doc.y_scores.forEach((y, j) => {
      const value = doc.grid[i][j];
      cells.push({ x, y, value });
      if (value !== "inf" && value < minValue) {
        minValue = value;
        minIndex = cells.length - 1;
      }
    });
  });
  return { cells, xScores: [...doc.x_scores], yScores: [...doc.y_scores], minIndex };
}
