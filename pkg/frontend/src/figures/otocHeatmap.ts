/** Space-time heatmap of one correlator pair with wavefront guide lines. */

import { defaultManifestPath, readCsv, readManifest, SchemaError } from "../csv.js";
import { viridis } from "../colormap.js";
import { makeFrame } from "../plot.js";
import { WHITE } from "../raster.js";
import { gridFromLong, paintCells } from "./heatmap.js";

export interface OtocHeatmapSpec {
  input: string;
  pair?: string;
  cap?: number;
  manifest?: string;
}

export const GUIDE_DASH: readonly [number, number] = [3, 3];

export function renderOtocHeatmap(spec: OtocHeatmapSpec): Buffer {
  const cap = spec.cap ?? 0.25;
  if (!(cap > 0)) throw new SchemaError(`color cap must be positive, got ${cap}`);
  const rows = readCsv(spec.input, ["pair", "t", "l", "c_mean", "c_stderr"]);
  const pairs = [...new Set(rows.map((r) => r.pair ?? ""))];
  const pair = spec.pair ?? pairs[0];
  if (!pair || !pairs.includes(pair)) {
    throw new SchemaError(`${spec.input}: pair '${pair}' not present; found: ${pairs.join(", ")}`);
  }
  const manifestPath = spec.manifest ?? defaultManifestPath(spec.input);
  const manifest = readManifest(manifestPath);
  if (manifest.butterflyVelocity === null) {
    throw new SchemaError(`${manifestPath}: no butterfly_velocity entry for the guide lines`);
  }

  const grid = gridFromLong(rows.filter((r) => r.pair === pair), "l", "t", "c_mean", spec.input);
  const lMin = grid.xs[0] as number;
  const lMax = grid.xs[grid.xs.length - 1] as number;
  const tMax = grid.ys[grid.ys.length - 1] as number;
  const frame = makeFrame({
    xDomain: [lMin - 0.5, lMax + 0.5],
    yDomain: [-0.5, tMax + 0.5],
    xLabel: "l",
    yLabel: "t",
    title: `C ${pair} (cap ${cap})`,
  });
  paintCells(frame, grid, (v) => viridis(Math.min(v, cap) / cap));

  // Dashed cone guides l = +- v_B t, clipped to the plotted site range.
  const vB = manifest.butterflyVelocity;
  for (const sign of [1, -1]) {
    const lEdge = sign > 0 ? lMax : lMin;
    const tEdge = vB > 0 ? Math.min(tMax, Math.abs(lEdge) / vB) : tMax;
    frame.canvas.line(
      Math.round(frame.x(0)),
      Math.round(frame.y(0)),
      Math.round(frame.x(sign * vB * tEdge)),
      Math.round(frame.y(tEdge)),
      WHITE,
      GUIDE_DASH,
    );
  }
  return frame.canvas.toPng();
}
