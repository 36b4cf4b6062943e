// Hand-rolled SVG charts: a multi-series line chart for sensitivity sweeps
// and a heatmap for efficiency surfaces. Pure string builders, no DOM.

import type { SweepSeries, SurfaceView } from "./chartdata.js";
import { fmtFull } from "./format.js";

const SERIES_COLORS = ["#c0392b", "#e67e22", "#27ae60", "#16a085", "#2980b9", "#8e44ad"];

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function lineChartSvg(
  series: SweepSeries[],
  width = 560,
  height = 300,
): string {
  const pad = { left: 44, right: 120, top: 16, bottom: 32 };
  const plotW = width - pad.left - pad.right;
  const plotH = height - pad.top - pad.bottom;
  const sx = (x: number) => pad.left + x * plotW;
  const sy = (y: number) => pad.top + (1 - y) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="chart">`,
  ];
  for (const tick of [0, 0.25, 0.5, 0.75, 1]) {
    parts.push(
      `<line x1="${pad.left}" y1="${sy(tick)}" x2="${pad.left + plotW}" y2="${sy(tick)}" class="grid"/>`,
      `<text x="${pad.left - 6}" y="${sy(tick) + 4}" class="tick" text-anchor="end">${tick}</text>`,
      `<text x="${sx(tick)}" y="${height - 10}" class="tick" text-anchor="middle">${tick}</text>`,
    );
  }
  series.forEach((s, index) => {
    const color = SERIES_COLORS[index % SERIES_COLORS.length];
    const path = s.points
      .map((p, i) => `${i === 0 ? "M" : "L"}${sx(p.x).toFixed(1)},${sy(p.y).toFixed(1)}`)
      .join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="2"/>`);
    const ly = pad.top + 14 * index + 8;
    parts.push(
      `<line x1="${width - pad.right + 8}" y1="${ly}" x2="${width - pad.right + 26}" y2="${ly}" stroke="${color}" stroke-width="2"/>`,
      `<text x="${width - pad.right + 30}" y="${ly + 4}" class="tick">${escapeXml(s.label)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("");
}

export function heatmapSvg(view: SurfaceView, width = 560, height = 420): string {
  const pad = { left: 48, right: 16, top: 16, bottom: 36 };
  const nx = view.xScores.length;
  const ny = view.yScores.length;
  const cw = (width - pad.left - pad.right) / nx;
  const ch = (height - pad.top - pad.bottom) / ny;

  const finite = view.cells.filter((c) => c.value !== "inf").map((c) => c.value as number);
  const lo = finite.length ? Math.min(...finite) : 0;
  const hi = finite.length ? Math.max(...finite) : 1;

  const shade = (value: number): string => {
    const t = hi > lo ? (value - lo) / (hi - lo) : 0;
    const channel = Math.round(235 - t * 170);
    return `rgb(${channel}, ${Math.round(channel * 0.92)}, ${Math.round(90 + t * 40)})`;
  };

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="chart">`,
  ];
  view.cells.forEach((cell, index) => {
    const i = Math.floor(index / ny);
    const j = index % ny;
    const x = pad.left + i * cw;
    const y = pad.top + (ny - 1 - j) * ch;
    const fill = cell.value === "inf" ? "#999" : shade(cell.value);
    const highlight = index === view.minIndex ? ' stroke="#111" stroke-width="2.5"' : "";
    parts.push(
      `<rect x="${x.toFixed(1)}" y="${y.toFixed(1)}" width="${Math.max(cw - 1, 1).toFixed(1)}" ` +
        `height="${Math.max(ch - 1, 1).toFixed(1)}" fill="${fill}"${highlight}>` +
        `<title>(${cell.x}, ${cell.y}) = ${escapeXml(fmtFull(cell.value))}</title></rect>`,
    );
  });
  view.xScores.forEach((x, i) => {
    if (nx <= 12 || i % 2 === 0) {
      parts.push(
        `<text x="${(pad.left + (i + 0.5) * cw).toFixed(1)}" y="${height - 14}" class="tick" text-anchor="middle">${x.toFixed(2)}</text>`,
      );
    }
  });
  view.yScores.forEach((y, j) => {
    if (ny <= 12 || j % 2 === 0) {
      parts.push(
        `<text x="${pad.left - 6}" y="${(pad.top + (ny - 1 - j + 0.65) * ch).toFixed(1)}" class="tick" text-anchor="end">${y.toFixed(2)}</text>`,
      );
    }
  });
  parts.push("</svg>");
  return parts.join("");
}
