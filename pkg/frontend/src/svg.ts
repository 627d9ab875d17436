/** Scene -> SVG string. Numbers are rounded to 0.01 px for stable bytes. */

import { encodePng } from "./png.js";
import type { Scene, Shape } from "./scene.js";

function n(x: number): string {
  return String(Math.round(x * 100) / 100);
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function shapeToSvg(shape: Shape): string {
  switch (shape.kind) {
    case "rect":
      return `<rect x="${n(shape.x)}" y="${n(shape.y)}" width="${n(shape.w)}" height="${n(shape.h)}" fill="${shape.fill}"/>`;
    case "polyline": {
      const pts = shape.points.map(([x, y]) => `${n(x)},${n(y)}`).join(" ");
      const dash = shape.dash ? ` stroke-dasharray="${shape.dash.join(",")}"` : "";
      return `<polyline points="${pts}" fill="none" stroke="${shape.stroke}" stroke-width="${n(shape.width)}"${dash}/>`;
    }
    case "text": {
      const transform = shape.rotate
        ? ` transform="rotate(-90 ${n(shape.x)} ${n(shape.y)})"`
        : "";
      return (
        `<text x="${n(shape.x)}" y="${n(shape.y)}" font-family="monospace" ` +
        `font-size="${n(shape.size)}" text-anchor="${shape.anchor}"${transform}>` +
        `${esc(shape.s)}</text>`
      );
    }
    case "raster": {
      const png = encodePng(shape.cols, shape.rows, shape.rgba);
      return (
        `<image x="${n(shape.x)}" y="${n(shape.y)}" width="${n(shape.w)}" height="${n(shape.h)}" ` +
        `preserveAspectRatio="none" style="image-rendering:pixelated" ` +
        `href="data:image/png;base64,${png.toString("base64")}"/>`
      );
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.shapes.map(shapeToSvg).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" ` +
    `height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">\n  ` +
    `<rect x="0" y="0" width="${scene.width}" height="${scene.height}" fill="#ffffff"/>\n  ` +
    body +
    "\n</svg>\n"
  );
}
