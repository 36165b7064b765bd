export { Canvas, BLACK, GRAY, WHITE } from "./raster.js";
export { encodePng } from "./png.js";
export { viridis } from "./colormap.js";
export {
  SchemaError,
  defaultManifestPath,
  numericColumn,
  readCsv,
  readManifest,
} from "./csv.js";
export { formatTick, linearScale, makeFrame, seriesColor, ticks, MARGIN } from "./plot.js";
export { gridFromLong, paintCells } from "./figures/heatmap.js";
export { renderOtocHeatmap, GUIDE_DASH } from "./figures/otocHeatmap.js";
export { renderIprCurves, renderKCurves, renderNormsCurve } from "./figures/curves.js";
export { renderGramHeatmap } from "./figures/gramHeatmap.js";
export { run } from "./cli.js";
