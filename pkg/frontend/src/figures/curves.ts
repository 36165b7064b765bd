/** Line-plot figures: participation ratios, basis norms, complexity growth. */

import { basename } from "node:path";
import { numericColumn, readCsv, SchemaError } from "../csv.js";
import { makeFrame, seriesColor, type Frame } from "../plot.js";
import { GRAY, type Rgb } from "../raster.js";
import { GUIDE_DASH } from "./otocHeatmap.js";

interface Series {
  label: string;
  xs: number[];
  ys: number[];
  errs?: number[];
}

function loadSeries(
  path: string,
  xColumn: string,
  yColumn: string,
  errColumn?: string,
): Series {
  const required = errColumn ? [xColumn, yColumn, errColumn] : [xColumn, yColumn];
  const rows = readCsv(path, required);
  if (rows.length === 0) throw new SchemaError(`${path}: no data rows`);
  return {
    label: basename(path).replace(/\.csv$/, ""),
    xs: numericColumn(rows, xColumn, path),
    ys: numericColumn(rows, yColumn, path),
    errs: errColumn ? numericColumn(rows, errColumn, path) : undefined,
  };
}

function drawSeries(frame: Frame, series: Series, color: Rgb, markers = false): void {
  const { canvas, x, y } = frame;
  for (let i = 0; i < series.xs.length; i++) {
    const px = Math.round(x(series.xs[i] as number));
    const py = Math.round(y(series.ys[i] as number));
    const err = series.errs?.[i] ?? 0;
    if (err > 0) {
      const lo = Math.round(y((series.ys[i] as number) - err));
      const hi = Math.round(y((series.ys[i] as number) + err));
      canvas.line(px, lo, px, hi, color);
    }
    if (markers) canvas.marker(px, py, color);
    if (i > 0) {
      canvas.line(
        Math.round(x(series.xs[i - 1] as number)),
        Math.round(y(series.ys[i - 1] as number)),
        px,
        py,
        color,
      );
    }
  }
}

function drawLegend(frame: Frame, entries: Series[]): void {
  entries.forEach((series, i) => {
    const yPos = frame.plot.top + 6 + i * 12;
    frame.canvas.line(frame.plot.left + 8, yPos + 3, frame.plot.left + 24, yPos + 3, seriesColor(i));
    frame.canvas.text(frame.plot.left + 28, yPos, series.label);
  });
}

function curveFigure(
  inputs: readonly string[],
  columns: { x: string; y: string; err?: string },
  labels: { x: string; y: string },
  options: { guideIdentity?: boolean; markers?: boolean } = {},
): Buffer {
  if (inputs.length === 0) throw new SchemaError("at least one input CSV is required");
  const all = inputs.map((p) => loadSeries(p, columns.x, columns.y, columns.err));
  const xMax = Math.max(...all.map((s) => Math.max(...s.xs)));
  const xMin = Math.min(0, ...all.map((s) => Math.min(...s.xs)));
  let yMax = Math.max(...all.map((s) => Math.max(...s.ys)));
  if (options.guideIdentity) yMax = Math.max(yMax, xMax);
  const frame = makeFrame({
    xDomain: [xMin, xMax],
    yDomain: [0, yMax * 1.05 || 1],
    xLabel: labels.x,
    yLabel: labels.y,
  });
  if (options.guideIdentity) {
    // Reference growth y = t, drawn under the data curves.
    frame.canvas.line(
      Math.round(frame.x(0)),
      Math.round(frame.y(0)),
      Math.round(frame.x(xMax)),
      Math.round(frame.y(xMax)),
      GRAY,
      GUIDE_DASH,
    );
  }
  all.forEach((series, i) => drawSeries(frame, series, seriesColor(i), options.markers));
  if (all.length > 1) drawLegend(frame, all);
  return frame.canvas.toPng();
}

export function renderIprCurves(inputs: readonly string[]): Buffer {
  return curveFigure(inputs, { x: "t", y: "ipr_mean", err: "ipr_stderr" }, { x: "t", y: "IPR" });
}

export function renderKCurves(inputs: readonly string[]): Buffer {
  return curveFigure(
    inputs,
    { x: "t", y: "k_mean", err: "k_stderr" },
    { x: "t", y: "K(t)" },
    { guideIdentity: true },
  );
}

export function renderNormsCurve(inputs: readonly string[]): Buffer {
  return curveFigure(
    inputs,
    { x: "n", y: "norm_A" },
    { x: "n", y: "norm" },
    { markers: true },
  );
}
