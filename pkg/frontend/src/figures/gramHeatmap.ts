/** Matrix plot of snapshot overlaps, row 0 at the top like a printed matrix. */

import { readCsv } from "../csv.js";
import { viridis } from "../colormap.js";
import { makeFrame } from "../plot.js";
import { gridFromLong, paintCells } from "./heatmap.js";

export function renderGramHeatmap(input: string): Buffer {
  const rows = readCsv(input, ["n", "m", "value"]);
  const grid = gridFromLong(rows, "m", "n", "value", input);
  const nMax = grid.ys[grid.ys.length - 1] as number;
  const values = rows.map((r) => Number(r.value));
  const vMin = Math.min(0, ...values);
  const vMax = Math.max(1e-12, ...values);
  const frame = makeFrame({
    width: 420,
    height: 420,
    xDomain: [-0.5, (grid.xs[grid.xs.length - 1] as number) + 0.5],
    yDomain: [nMax + 0.5, -0.5],
    xLabel: "m",
    yLabel: "n",
    title: "overlaps",
  });
  paintCells(frame, grid, (v) => viridis((v - vMin) / (vMax - vMin)));
  return frame.canvas.toPng();
}
