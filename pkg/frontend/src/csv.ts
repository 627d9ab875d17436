/** Readers for the simulator's documented CSV/JSON artifact formats. */

import { existsSync, readFileSync } from "node:fs";
import { join } from "node:path";

export interface Manifest {
  figure: string;
  params: Record<string, unknown>;
  files: string[];
  seeds: Record<string, number[]>;
  [key: string]: unknown;
}

export interface Curve {
  t: number[];
  v: number[];
}

export interface Field {
  t: number[];
  values: number[][]; // [time][node]
}

export interface Histogram {
  left: number[];
  right: number[];
  density: number[];
}

export interface TailFitJson {
  mu: number;
  amplitude: number;
  rate: number;
  range: [number, number];
  residual: number;
}

export interface SweepRow {
  n: number;
  b: number;
  b_over_n: number;
  chi_bar: number;
  alpha_bar_lta: number;
  r_used: number;
}

export function requireFile(runDir: string, name: string): string {
  const path = join(runDir, name);
  if (!existsSync(path)) {
    throw new Error(`missing expected file ${path}`);
  }
  return path;
}

function rows(path: string): string[][] {
  const text = readFileSync(path, "utf8").trim();
  return text.split("\n").map((line) => line.split(","));
}

export function readManifest(runDir: string): Manifest {
  const path = requireFile(runDir, "manifest.json");
  return JSON.parse(readFileSync(path, "utf8")) as Manifest;
}

export function readCurve(runDir: string, name: string): Curve {
  const body = rows(requireFile(runDir, name)).slice(1);
  return {
    t: body.map((r) => Number(r[0])),
    v: body.map((r) => Number(r[1])),
  };
}

export function readField(runDir: string, name: string): Field {
  const body = rows(requireFile(runDir, name)).slice(1);
  return {
    t: body.map((r) => Number(r[0])),
    values: body.map((r) => r.slice(1).map(Number)),
  };
}

export function readMatrix(runDir: string, name: string): number[][] {
  const body = rows(requireFile(runDir, name)).slice(1);
  return body.map((r) => r.slice(1).map(Number));
}

export function readHistogram(runDir: string, name: string): Histogram {
  const body = rows(requireFile(runDir, name)).slice(1);
  return {
    left: body.map((r) => Number(r[0])),
    right: body.map((r) => Number(r[1])),
    density: body.map((r) => Number(r[2])),
  };
}

export function readTailFit(runDir: string, name: string): TailFitJson {
  const path = requireFile(runDir, name);
  return JSON.parse(readFileSync(path, "utf8")) as TailFitJson;
}

export function readSweep(runDir: string, name: string): SweepRow[] {
  const body = rows(requireFile(runDir, name)).slice(1);
  return body.map((r) => ({
    n: Number(r[0]),
    b: Number(r[1]),
    b_over_n: Number(r[2]),
    chi_bar: Number(r[3]),
    alpha_bar_lta: Number(r[4]),
    r_used: Number(r[5]),
  }));
}

export function bList(manifest: Manifest): number[] {
  const fromParams = manifest.params["b_list"];
  if (Array.isArray(fromParams)) return fromParams.map(Number);
  throw new Error("manifest has no b_list parameter");
}
