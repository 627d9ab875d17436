export { buildFigure, FIGURE_NAMES, type Panel } from "./figures.js";
export { sceneToSvg } from "./svg.js";
export { rasterizeScene } from "./raster.js";
export { encodePng } from "./png.js";
export { linePanel, histogramPanel, heatmapPanel } from "./plot.js";
export { linearScale, log10Scale, fmtTick } from "./scales.js";
export { poissonDensity, wignerDensity, tailModel } from "./refcurves.js";
export * from "./scene.js";
export * as csv from "./csv.js";
