/** Device-independent scene graph shared by the SVG and PNG backends. */

export interface Rect {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill: string;
}

export interface Polyline {
  kind: "polyline";
  points: Array<[number, number]>;
  stroke: string;
  width: number;
  dash?: number[];
  role?: string; // semantic tag ("series:<label>", "reference:<name>") for tests
}

export interface Text {
  kind: "text";
  x: number;
  y: number;
  s: string;
  size: number;
  anchor: "start" | "middle" | "end";
  rotate?: boolean; // vertical (for y-axis labels)
}

export interface RasterImage {
  kind: "raster";
  x: number;
  y: number;
  w: number;
  h: number;
  cols: number;
  rows: number;
  rgba: Uint8Array; // rows * cols * 4, row-major, row 0 at the TOP of the rect
}

export type Shape = Rect | Polyline | Text | RasterImage;

export interface Scene {
  width: number;
  height: number;
  shapes: Shape[];
}

export function polylines(scene: Scene, rolePrefix?: string): Polyline[] {
  const out: Polyline[] = [];
  for (const s of scene.shapes) {
    if (s.kind === "polyline" && (!rolePrefix || (s.role ?? "").startsWith(rolePrefix))) {
      out.push(s);
    }
  }
  return out;
}
