/** Panel builders: framed line charts, histograms, and heatmaps. */

import type { Polyline, Scene, Shape } from "./scene.js";
import { Scale, fmtTick, linearScale, log10Scale } from "./scales.js";

export interface SeriesSpec {
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: number[];
  label?: string;
  role?: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog?: boolean;
  yLog?: boolean;
  xDomain?: [number, number];
  yDomain?: [number, number];
  width?: number;
  height?: number;
}

const MARGIN = { left: 64, right: 14, top: 26, bottom: 44 };

function padDomain(lo: number, hi: number, log: boolean): [number, number] {
  if (log) {
    const f = Math.pow(hi / lo, 0.04);
    return [lo / f, hi * f];
  }
  if (lo === hi) return [lo - 0.5, hi + 0.5];
  const pad = (hi - lo) * 0.04;
  return [lo - pad, hi + pad];
}

function dataDomain(series: SeriesSpec[], axis: "x" | "y", log: boolean): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    const vals = axis === "x" ? s.x : s.y;
    for (const v of vals) {
      if (log && v <= 0) continue;
      if (Number.isFinite(v)) {
        lo = Math.min(lo, v);
        hi = Math.max(hi, v);
      }
    }
  }
  if (!Number.isFinite(lo)) throw new Error(`no finite ${axis} data for a ${log ? "log" : "linear"} axis`);
  return padDomain(lo, hi, log);
}

function frame(spec: PanelSpec, xScale: Scale, yScale: Scale, width: number, height: number): Shape[] {
  const x0 = MARGIN.left;
  const x1 = width - MARGIN.right;
  const y0 = MARGIN.top;
  const y1 = height - MARGIN.bottom;
  const shapes: Shape[] = [];
  shapes.push({
    kind: "polyline",
    points: [
      [x0, y0],
      [x1, y0],
      [x1, y1],
      [x0, y1],
      [x0, y0],
    ],
    stroke: "#000000",
    width: 1,
    role: "frame",
  });
  for (const tick of xScale.ticks()) {
    const px = xScale.map(tick.value);
    if (px < x0 - 0.5 || px > x1 + 0.5) continue;
    shapes.push({ kind: "polyline", points: [[px, y1], [px, y1 + 5]], stroke: "#000000", width: 1 });
    shapes.push({ kind: "text", x: px, y: y1 + 18, s: tick.label, size: 10, anchor: "middle" });
  }
  for (const tick of yScale.ticks()) {
    const py = yScale.map(tick.value);
    if (py < y0 - 0.5 || py > y1 + 0.5) continue;
    shapes.push({ kind: "polyline", points: [[x0 - 5, py], [x0, py]], stroke: "#000000", width: 1 });
    shapes.push({ kind: "text", x: x0 - 8, y: py + 3.5, s: tick.label, size: 10, anchor: "end" });
  }
  shapes.push({ kind: "text", x: (x0 + x1) / 2, y: height - 10, s: spec.xLabel, size: 11, anchor: "middle" });
  shapes.push({ kind: "text", x: 16, y: (y0 + y1) / 2, s: spec.yLabel, size: 11, anchor: "middle", rotate: true });
  shapes.push({ kind: "text", x: (x0 + x1) / 2, y: 16, s: spec.title, size: 12, anchor: "middle" });
  return shapes;
}

function buildScales(spec: PanelSpec, series: SeriesSpec[], width: number, height: number): [Scale, Scale] {
  const xDomain = spec.xDomain ?? dataDomain(series, "x", !!spec.xLog);
  const yDomain = spec.yDomain ?? dataDomain(series, "y", !!spec.yLog);
  const xRange: [number, number] = [MARGIN.left, width - MARGIN.right];
  const yRange: [number, number] = [height - MARGIN.bottom, MARGIN.top];
  const xScale = spec.xLog ? log10Scale(xDomain, xRange) : linearScale(xDomain, xRange);
  const yScale = spec.yLog ? log10Scale(yDomain, yRange) : linearScale(yDomain, yRange);
  return [xScale, yScale];
}

function seriesShape(s: SeriesSpec, xScale: Scale, yScale: Scale, height: number): Polyline {
  const yFloor = height - MARGIN.bottom;
  const yCeil = MARGIN.top;
  const points: Array<[number, number]> = [];
  for (let i = 0; i < s.x.length; i++) {
    const xv = s.x[i];
    const yv = s.y[i];
    if (xScale.log && xv <= 0) continue;
    let py: number;
    if (yScale.log && yv <= 0) {
      py = yFloor; // clamp nonpositive values to the axis floor on log panels
    } else {
      py = Math.min(yFloor, Math.max(yCeil, yScale.map(yv)));
    }
    points.push([xScale.map(xv), py]);
  }
  return {
    kind: "polyline",
    points,
    stroke: s.color,
    width: s.width ?? 1.3,
    dash: s.dash,
    role: s.role ?? (s.label ? `series:${s.label}` : "series"),
  };
}

function legend(series: SeriesSpec[], width: number): Shape[] {
  const entries = series.filter((s) => s.label);
  const shapes: Shape[] = [];
  let y = MARGIN.top + 12;
  const x = width - MARGIN.right - 110;
  for (const s of entries) {
    shapes.push({
      kind: "polyline",
      points: [[x, y - 3.5], [x + 22, y - 3.5]],
      stroke: s.color,
      width: s.width ?? 1.3,
      dash: s.dash,
      role: "legend",
    });
    shapes.push({ kind: "text", x: x + 28, y, s: s.label!, size: 10, anchor: "start" });
    y += 14;
  }
  return shapes;
}

export function linePanel(spec: PanelSpec, series: SeriesSpec[]): Scene {
  const width = spec.width ?? 480;
  const height = spec.height ?? 360;
  const [xScale, yScale] = buildScales(spec, series, width, height);
  const shapes: Shape[] = frame(spec, xScale, yScale, width, height);
  for (const s of series) {
    shapes.push(seriesShape(s, xScale, yScale, height));
  }
  shapes.push(...legend(series, width));
  return { width, height, shapes };
}

export interface HistogramOverlay {
  fn: (x: number) => number;
  color: string;
  dash?: number[];
  label: string;
  role: string;
}

export function histogramPanel(
  spec: PanelSpec,
  hist: { left: number[]; right: number[]; density: number[] },
  overlays: HistogramOverlay[],
): Scene {
  const width = spec.width ?? 480;
  const height = spec.height ?? 360;
  const step: SeriesSpec = { x: [], y: [], color: "#555555", role: "histogram" };
  for (let i = 0; i < hist.left.length; i++) {
    step.x.push(hist.left[i], hist.right[i]);
    step.y.push(hist.density[i], hist.density[i]);
  }
  const [xScale, yScale] = buildScales(spec, [step], width, height);
  const shapes: Shape[] = [];
  // filled bars under the step outline
  const yBase = height - MARGIN.bottom;
  for (let i = 0; i < hist.left.length; i++) {
    if (yScale.log && hist.density[i] <= 0) continue;
    const px0 = xScale.map(hist.left[i]);
    const px1 = xScale.map(hist.right[i]);
    const py = Math.max(MARGIN.top, yScale.map(hist.density[i]));
    shapes.push({ kind: "rect", x: px0, y: py, w: px1 - px0, h: yBase - py, fill: "#d8d8d8" });
  }
  const frameShapes = frame(spec, xScale, yScale, width, height);
  const overlaySeries: SeriesSpec[] = overlays.map((o) => {
    const xs: number[] = [];
    const ys: number[] = [];
    const [d0, d1] = xScale.domain;
    for (let i = 0; i <= 256; i++) {
      const x = d0 + ((d1 - d0) * i) / 256;
      xs.push(x);
      ys.push(o.fn(x));
    }
    return { x: xs, y: ys, color: o.color, dash: o.dash, label: o.label, role: o.role, width: 1.4 };
  });
  const result: Shape[] = [...shapes, ...frameShapes, seriesShape(step, xScale, yScale, height)];
  for (const s of overlaySeries) {
    result.push(seriesShape(s, xScale, yScale, height));
  }
  result.push(...legend(overlaySeries, width));
  return { width, height, shapes: result };
}

/** Grayscale heatmap, dark = large, with a gamma to lift small structure. */
export function heatmapPanel(
  spec: PanelSpec,
  matrix: number[][],
  xExtent: [number, number],
  yExtent: [number, number],
  gamma = 0.4,
): Scene {
  const width = spec.width ?? 480;
  const height = spec.height ?? 420;
  const rows = matrix.length;
  const cols = matrix[0].length;
  let max = -Infinity;
  for (const row of matrix) for (const v of row) max = Math.max(max, v);
  if (!(max > 0)) max = 1;
  const rgba = new Uint8Array(rows * cols * 4);
  for (let r = 0; r < rows; r++) {
    // matrix row 0 carries the smallest y value; raster row 0 is the top
    const src = matrix[rows - 1 - r];
    for (let c = 0; c < cols; c++) {
      const t = Math.pow(Math.max(0, src[c]) / max, gamma);
      const lum = Math.round(255 * (1 - t));
      const o = (r * cols + c) * 4;
      rgba[o] = lum;
      rgba[o + 1] = lum;
      rgba[o + 2] = lum;
      rgba[o + 3] = 255;
    }
  }
  const xScale = linearScale(padDomain(xExtent[0], xExtent[1], false), [MARGIN.left, width - MARGIN.right]);
  const yScale = linearScale(padDomain(yExtent[0], yExtent[1], false), [height - MARGIN.bottom, MARGIN.top]);
  const shapes: Shape[] = [];
  const px0 = xScale.map(xExtent[0]);
  const px1 = xScale.map(xExtent[1]);
  const py0 = yScale.map(yExtent[1]);
  const py1 = yScale.map(yExtent[0]);
  shapes.push({ kind: "raster", x: px0, y: py0, w: px1 - px0, h: py1 - py0, cols, rows, rgba });
  shapes.push(...frame(spec, xScale, yScale, width, height));
  shapes.push({
    kind: "text",
    x: width - MARGIN.right,
    y: 16,
    s: `max=${fmtTick(Math.round(max * 1e6) / 1e6)}`,
    size: 10,
    anchor: "end",
  });
  return { width, height, shapes };
}
