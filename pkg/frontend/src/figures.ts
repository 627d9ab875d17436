/** Figure builders: run directory -> list of named panel scenes. */

import {
  Manifest,
  bList,
  readCurve,
  readField,
  readHistogram,
  readManifest,
  readMatrix,
  readSweep,
  readTailFit,
} from "./csv.js";
import { heatmapPanel, histogramPanel, linePanel, HistogramOverlay, SeriesSpec } from "./plot.js";
import { poissonDensity, tailModel, wignerDensity } from "./refcurves.js";
import type { Scene } from "./scene.js";

export interface Panel {
  name: string;
  scene: Scene;
}

const PALETTE = ["#000000", "#cc0000", "#008800", "#0033cc", "#bb6600", "#7700aa"];

const color = (i: number) => PALETTE[i % PALETTE.length];

function paramNumber(manifest: Manifest, key: string): number {
  const v = manifest.params[key];
  if (typeof v !== "number") throw new Error(`manifest parameter ${key} is missing or not a number`);
  return v;
}

function returnProbs(runDir: string, manifest: Manifest): Panel[] {
  const n = paramNumber(manifest, "n");
  const bs = bList(manifest);
  const stems: Array<[string, string]> = [
    ["classical", "classical return probability"],
    ["quantum", "quantum return probability"],
    ["bound", "lower bound"],
  ];
  const panels: Panel[] = [];
  for (const [stem, title] of stems) {
    const series: SeriesSpec[] = bs.map((b, i) => {
      const curve = readCurve(runDir, `${stem}_b${b}.csv`);
      return { x: curve.t, y: curve.v, color: color(i), label: `B=${b}`, role: `series:${stem}:b${b}` };
    });
    if (stem === "classical") {
      const t = series[0].x;
      series.push({
        x: [t[0], t[t.length - 1]],
        y: [1 / n, 1 / n],
        color: "#888888",
        dash: [6, 4],
        label: "1/N",
        role: "reference:equipartition",
      });
    }
    panels.push({
      name: stem,
      scene: linePanel(
        { title, xLabel: "t", yLabel: "probability", xLog: true, yLog: true },
        series,
      ),
    });
  }
  return panels;
}

function zoom(runDir: string, manifest: Manifest): Panel[] {
  const bs = bList(manifest);
  const series: SeriesSpec[] = bs.map((b, i) => {
    const curve = readCurve(runDir, `zoom_b${b}.csv`);
    return { x: curve.t, y: curve.v, color: color(i), label: `B=${b}`, role: `series:zoom:b${b}` };
  });
  return [
    {
      name: "zoom",
      scene: linePanel(
        { title: "quantum return, short times", xLabel: "t", yLabel: "probability", xLog: true, yLog: true },
        series,
      ),
    },
  ];
}

function dosFigure(runDir: string, manifest: Manifest): Panel[] {
  const bs = bList(manifest);
  const panels: Panel[] = [];
  const fitted = new Set(
    manifest.files.filter((f) => f.startsWith("tailfit_b")).map((f) => f.replace(/\D/g, "")),
  );
  for (const b of bs) {
    const dosHist = readHistogram(runDir, `dos_b${b}.csv`);
    panels.push({
      name: `dos_b${b}`,
      scene: histogramPanel(
        { title: `density of states, B=${b}`, xLabel: "E", yLabel: "density" },
        dosHist,
        [],
      ),
    });
    const spacingHist = readHistogram(runDir, `spacing_b${b}.csv`);
    const overlays: HistogramOverlay[] = [
      { fn: poissonDensity, color: "#cc0000", dash: [6, 4], label: "Poisson", role: "reference:poisson" },
      { fn: wignerDensity, color: "#0033cc", dash: [8, 3, 2, 3], label: "Wigner-Dyson", role: "reference:wigner" },
    ];
    if (fitted.has(String(b))) {
      const fit = readTailFit(runDir, `tailfit_b${b}.json`);
      overlays.push({
        fn: tailModel(fit),
        color: "#008800",
        label: `fit mu=${Math.round(fit.mu * 100) / 100}`,
        role: "reference:tailfit",
      });
    }
    panels.push({
      name: `spacing_b${b}`,
      scene: histogramPanel(
        { title: `level spacing, B=${b}`, xLabel: "spacing", yLabel: "density", yLog: true },
        spacingHist,
        overlays,
      ),
    });
  }
  return panels;
}

function carpets(runDir: string, manifest: Manifest): Panel[] {
  const bs = bList(manifest);
  const source = paramNumber(manifest, "source");
  return bs.map((b) => {
    const field = readField(runDir, `carpet_b${b}.csv`);
    const nodes = field.values[0].length;
    return {
      name: `carpet_b${b}`,
      scene: heatmapPanel(
        { title: `transition probabilities, B=${b}, j=${source}`, xLabel: "node k", yLabel: "t" },
        field.values,
        [0, nodes - 1],
        [field.t[0], field.t[field.t.length - 1]],
      ),
    };
  });
}

function ltaMap(runDir: string, manifest: Manifest): Panel[] {
  const bs = bList(manifest);
  return bs.map((b) => {
    const matrix = readMatrix(runDir, `lta_b${b}.csv`);
    return {
      name: `lta_b${b}`,
      scene: heatmapPanel(
        { title: `long-time average, B=${b}`, xLabel: "source j", yLabel: "node k" },
        matrix,
        [0, matrix[0].length - 1],
        [0, matrix.length - 1],
      ),
    };
  });
}

function participation(runDir: string, manifest: Manifest): Panel[] {
  const bs = bList(manifest);
  return bs.map((b) => {
    const matrix = readMatrix(runDir, `xi_b${b}.csv`);
    return {
      name: `xi_b${b}`,
      scene: heatmapPanel(
        { title: `eigenstate weights, B=${b}`, xLabel: "node j", yLabel: "mode n" },
        matrix,
        [0, matrix[0].length - 1],
        [0, matrix.length - 1],
      ),
    };
  });
}

function chiSweep(runDir: string): Panel[] {
  const rows = readSweep(runDir, "chi_sweep.csv");
  const byN = new Map<number, typeof rows>();
  for (const row of rows) {
    const bucket = byN.get(row.n) ?? [];
    bucket.push(row);
    byN.set(row.n, bucket);
  }
  const series: SeriesSpec[] = [...byN.entries()].map(([n, bucket], i) => ({
    x: bucket.map((r) => r.b_over_n),
    y: bucket.map((r) => r.chi_bar),
    color: color(i),
    label: `N=${n}`,
    role: `series:chi:n${n}`,
  }));
  return [
    {
      name: "chi_sweep",
      scene: linePanel(
        { title: "long-time average vs B/N", xLabel: "B/N", yLabel: "chi" },
        series,
      ),
    },
  ];
}

export const FIGURE_NAMES = [
  "dos",
  "carpets",
  "lta-map",
  "return-probs",
  "zoom",
  "chi-sweep",
  "participation",
] as const;

export function buildFigure(runDir: string, figure: string): Panel[] {
  const manifest = readManifest(runDir);
  if (manifest.figure !== figure) {
    throw new Error(
      `run directory holds figure '${manifest.figure}', not '${figure}'`,
    );
  }
  switch (figure) {
    case "return-probs":
      return returnProbs(runDir, manifest);
    case "zoom":
      return zoom(runDir, manifest);
    case "dos":
      return dosFigure(runDir, manifest);
    case "carpets":
      return carpets(runDir, manifest);
    case "lta-map":
      return ltaMap(runDir, manifest);
    case "participation":
      return participation(runDir, manifest);
    case "chi-sweep":
      return chiSweep(runDir);
    default:
      throw new Error(`unknown figure '${figure}'; expected one of ${FIGURE_NAMES.join(", ")}`);
  }
}
