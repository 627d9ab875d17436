/** Scene -> RGBA raster for the PNG backend (rects, lines, bitmap text). */

import { GLYPH_ADVANCE, GLYPH_H, GLYPH_W, glyphFor, textWidth } from "./font.js";
import type { Scene, Shape } from "./scene.js";

function parseColor(c: string): [number, number, number] {
  if (c.startsWith("#") && c.length === 7) {
    return [
      parseInt(c.slice(1, 3), 16),
      parseInt(c.slice(3, 5), 16),
      parseInt(c.slice(5, 7), 16),
    ];
  }
  const named: Record<string, [number, number, number]> = {
    black: [0, 0, 0],
    white: [255, 255, 255],
    gray: [128, 128, 128],
  };
  return named[c] ?? [0, 0, 0];
}

class Canvas {
  data: Uint8Array;

  constructor(readonly width: number, readonly height: number) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) return;
    const o = (yi * this.width + xi) * 4;
    this.data[o] = rgb[0];
    this.data[o + 1] = rgb[1];
    this.data[o + 2] = rgb[2];
    this.data[o + 3] = 255;
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    const x0 = Math.max(0, Math.round(x));
    const y0 = Math.max(0, Math.round(y));
    const x1 = Math.min(this.width, Math.round(x + w));
    const y1 = Math.min(this.height, Math.round(y + h));
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.set(xx, yy, rgb);
      }
    }
  }

  dot(x: number, y: number, radius: number, rgb: [number, number, number]): void {
    if (radius <= 0.6) {
      this.set(x, y, rgb);
      return;
    }
    const r = Math.ceil(radius);
    for (let dy = -r; dy <= r; dy++) {
      for (let dx = -r; dx <= r; dx++) {
        if (dx * dx + dy * dy <= radius * radius) this.set(x + dx, y + dy, rgb);
      }
    }
  }

  /** Stroke a segment, honouring a dash pattern via travelled distance. */
  segment(
    x0: number, y0: number, x1: number, y1: number,
    rgb: [number, number, number], width: number,
    dash: number[] | undefined, phase: { d: number },
  ): void {
    const len = Math.hypot(x1 - x0, y1 - y0);
    const steps = Math.max(1, Math.ceil(len));
    const period = dash ? dash.reduce((a, b) => a + b, 0) : 0;
    for (let i = 0; i <= steps; i++) {
      const t = i / steps;
      let on = true;
      if (dash && period > 0) {
        let pos = (phase.d + t * len) % period;
        for (let k = 0; k < dash.length; k++) {
          if (pos < dash[k]) {
            on = k % 2 === 0;
            break;
          }
          pos -= dash[k];
        }
      }
      if (on) this.dot(x0 + (x1 - x0) * t, y0 + (y1 - y0) * t, width / 2, rgb);
    }
    phase.d += len;
  }

  text(x: number, y: number, s: string, size: number, anchor: string, rotate: boolean): void {
    const scale = Math.max(1, Math.round(size / GLYPH_H));
    const w = textWidth(s, scale);
    // (x, y) is the text baseline, as in SVG
    let ox = anchor === "middle" ? -w / 2 : anchor === "end" ? -w : 0;
    const oy = -GLYPH_H * scale;
    for (const ch of s) {
      const glyph = glyphFor(ch);
      for (let row = 0; row < GLYPH_H; row++) {
        for (let col = 0; col < GLYPH_W; col++) {
          if ((glyph[row] >> (GLYPH_W - 1 - col)) & 1) {
            for (let sy = 0; sy < scale; sy++) {
              for (let sx = 0; sx < scale; sx++) {
                const px = ox + col * scale + sx;
                const py = oy + row * scale + sy;
                if (rotate) {
                  this.set(x + py + GLYPH_H * scale, y + px, [0, 0, 0]);
                } else {
                  this.set(x + px, y + py + GLYPH_H * scale, [0, 0, 0]);
                }
              }
            }
          }
        }
      }
      ox += GLYPH_ADVANCE * scale;
    }
  }

  blit(shape: { x: number; y: number; w: number; h: number; cols: number; rows: number; rgba: Uint8Array }): void {
    const x0 = Math.round(shape.x);
    const y0 = Math.round(shape.y);
    const w = Math.round(shape.w);
    const h = Math.round(shape.h);
    for (let yy = 0; yy < h; yy++) {
      const sy = Math.min(shape.rows - 1, Math.floor((yy / h) * shape.rows));
      for (let xx = 0; xx < w; xx++) {
        const sx = Math.min(shape.cols - 1, Math.floor((xx / w) * shape.cols));
        const so = (sy * shape.cols + sx) * 4;
        this.set(x0 + xx, y0 + yy, [
          shape.rgba[so],
          shape.rgba[so + 1],
          shape.rgba[so + 2],
        ]);
      }
    }
  }
}

export function rasterizeScene(scene: Scene): Uint8Array {
  const canvas = new Canvas(scene.width, scene.height);
  for (const shape of scene.shapes as Shape[]) {
    switch (shape.kind) {
      case "rect":
        canvas.fillRect(shape.x, shape.y, shape.w, shape.h, parseColor(shape.fill));
        break;
      case "polyline": {
        const rgb = parseColor(shape.stroke);
        const phase = { d: 0 };
        for (let i = 1; i < shape.points.length; i++) {
          canvas.segment(
            shape.points[i - 1][0], shape.points[i - 1][1],
            shape.points[i][0], shape.points[i][1],
            rgb, shape.width, shape.dash, phase,
          );
        }
        break;
      }
      case "text":
        canvas.text(shape.x, shape.y, shape.s, shape.size, shape.anchor, shape.rotate ?? false);
        break;
      case "raster":
        canvas.blit(shape);
        break;
    }
  }
  return canvas.data;
}
