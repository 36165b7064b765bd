/** Shared machinery for matrix plots built from long-format rows. */

import { SchemaError, type Row } from "../csv.js";
import type { Frame } from "../plot.js";
import type { Rgb } from "../raster.js";

export interface LongGrid {
  xs: number[];
  ys: number[];
  get(x: number, y: number): number;
}

export function gridFromLong(
  rows: Row[],
  xKey: string,
  yKey: string,
  valueKey: string,
  path: string,
): LongGrid {
  const xs = [...new Set(rows.map((r) => Number(r[xKey])))].sort((a, b) => a - b);
  const ys = [...new Set(rows.map((r) => Number(r[yKey])))].sort((a, b) => a - b);
  const xIndex = new Map(xs.map((v, i) => [v, i]));
  const yIndex = new Map(ys.map((v, i) => [v, i]));
  const values = new Float64Array(xs.length * ys.length).fill(Number.NaN);
  for (const row of rows) {
    const xi = xIndex.get(Number(row[xKey]));
    const yi = yIndex.get(Number(row[yKey]));
    const v = Number(row[valueKey]);
    if (xi === undefined || yi === undefined || Number.isNaN(v)) {
      throw new SchemaError(`${path}: non-numeric cell in columns ${xKey}/${yKey}/${valueKey}`);
    }
    values[yi * xs.length + xi] = v;
  }
  return {
    xs,
    ys,
    get: (x, y) => {
      const xi = xIndex.get(x);
      const yi = yIndex.get(y);
      if (xi === undefined || yi === undefined) return Number.NaN;
      return values[yi * xs.length + xi] as number;
    },
  };
}

/** Paint one cell per (x, y) pair, edges at half-steps around each center. */
export function paintCells(
  frame: Frame,
  grid: LongGrid,
  color: (value: number) => Rgb,
): void {
  const { canvas, x, y } = frame;
  const xStep = grid.xs.length > 1 ? (grid.xs[1] as number) - (grid.xs[0] as number) : 1;
  const yStep = grid.ys.length > 1 ? (grid.ys[1] as number) - (grid.ys[0] as number) : 1;
  for (const gy of grid.ys) {
    for (const gx of grid.xs) {
      const value = grid.get(gx, gy);
      if (Number.isNaN(value)) continue;
      const x0 = Math.round(x(gx - xStep / 2));
      const x1 = Math.round(x(gx + xStep / 2));
      const y0 = Math.round(y(gy + yStep / 2));
      const y1 = Math.round(y(gy - yStep / 2));
      canvas.fillRect(Math.min(x0, x1), Math.min(y0, y1), Math.abs(x1 - x0) || 1, Math.abs(y1 - y0) || 1, color(value));
    }
  }
}
