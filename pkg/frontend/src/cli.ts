/** render <run_dir> <figure> [--format png|svg] [--out dir] */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { FIGURE_NAMES, buildFigure } from "./figures.js";
import { encodePng } from "./png.js";
import { rasterizeScene } from "./raster.js";
import { sceneToSvg } from "./svg.js";

const USAGE = `usage: swnsim-render <run_dir> <figure> [--format png|svg] [--out dir]
figures: ${FIGURE_NAMES.join(", ")}`;

export function main(argv: string[]): number {
  const positional: string[] = [];
  let format = "svg";
  let outDir: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--format") {
      format = argv[++i] ?? "";
    } else if (arg === "--out") {
      outDir = argv[++i];
    } else if (arg === "--help" || arg === "-h") {
      console.log(USAGE);
      return 0;
    } else if (arg.startsWith("--")) {
      console.error(`unknown option ${arg}\n${USAGE}`);
      return 2;
    } else {
      positional.push(arg);
    }
  }
  if (positional.length !== 2 || (format !== "svg" && format !== "png")) {
    console.error(USAGE);
    return 2;
  }
  const [runDir, figure] = positional;
  const target = outDir ?? join(runDir, "figures");
  let panels;
  try {
    panels = buildFigure(runDir, figure);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  mkdirSync(target, { recursive: true });
  for (const panel of panels) {
    const path = join(target, `${panel.name}.${format}`);
    if (format === "svg") {
      writeFileSync(path, sceneToSvg(panel.scene));
    } else {
      writeFileSync(
        path,
        encodePng(panel.scene.width, panel.scene.height, rasterizeScene(panel.scene)),
      );
    }
    console.log(path);
  }
  return 0;
}

const invokedDirectly = process.argv[1] && process.argv[1].endsWith("cli.js");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
