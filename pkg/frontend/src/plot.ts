/** Linear scales, tick placement, and the shared axes frame. */

import { BLACK, Canvas, type Rgb } from "./raster.js";
import { textWidth } from "./font.js";

export interface Scale {
  (value: number): number;
  domain: readonly [number, number];
}

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  const fn = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as Scale;
  fn.domain = [d0, d1];
  return fn;
}

/** Round tick positions: step is 1/2/5 times a power of ten. */
export function ticks(d0: number, d1: number, target = 6): number[] {
  const span = Math.abs(d1 - d0);
  if (span === 0) return [d0];
  const rough = span / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  let step = mag;
  for (const mult of [1, 2, 5, 10]) {
    if (mag * mult >= rough) {
      step = mag * mult;
      break;
    }
  }
  const start = Math.ceil(Math.min(d0, d1) / step) * step;
  const stop = Math.max(d0, d1);
  const out: number[] = [];
  for (let v = start; v <= stop + 1e-9 * step; v += step) {
    out.push(Math.abs(v) < 1e-12 ? 0 : v);
  }
  return out;
}

export function formatTick(value: number): string {
  if (Number.isInteger(value)) return String(value);
  const fixed = value.toFixed(3);
  return String(Number(fixed));
}

export interface Frame {
  canvas: Canvas;
  x: Scale;
  y: Scale;
  plot: { left: number; top: number; right: number; bottom: number };
}

export interface FrameOptions {
  width?: number;
  height?: number;
  xDomain: readonly [number, number];
  yDomain: readonly [number, number];
  xLabel: string;
  yLabel: string;
  title?: string;
}

export const MARGIN = { left: 52, right: 16, top: 22, bottom: 36 };

/** White canvas with a box, ticks, and numeric labels; y grows upward. */
export function makeFrame(options: FrameOptions): Frame {
  const width = options.width ?? 480;
  const height = options.height ?? 360;
  const canvas = new Canvas(width, height);
  const plot = {
    left: MARGIN.left,
    top: MARGIN.top,
    right: width - MARGIN.right,
    bottom: height - MARGIN.bottom,
  };
  const x = linearScale(options.xDomain[0], options.xDomain[1], plot.left, plot.right);
  const y = linearScale(options.yDomain[0], options.yDomain[1], plot.bottom, plot.top);

  canvas.line(plot.left, plot.top, plot.left, plot.bottom, BLACK);
  canvas.line(plot.left, plot.bottom, plot.right, plot.bottom, BLACK);
  canvas.line(plot.right, plot.top, plot.right, plot.bottom, BLACK);
  canvas.line(plot.left, plot.top, plot.right, plot.top, BLACK);

  for (const tick of ticks(options.xDomain[0], options.xDomain[1])) {
    const px = Math.round(x(tick));
    canvas.line(px, plot.bottom, px, plot.bottom + 3, BLACK);
    const label = formatTick(tick);
    canvas.text(px - Math.trunc(textWidth(label) / 2), plot.bottom + 6, label);
  }
  for (const tick of ticks(options.yDomain[0], options.yDomain[1])) {
    const py = Math.round(y(tick));
    canvas.line(plot.left - 3, py, plot.left, py, BLACK);
    canvas.textRight(plot.left - 6, py - 3, formatTick(tick));
  }
  canvas.text(
    Math.trunc((plot.left + plot.right) / 2 - textWidth(options.xLabel) / 2),
    height - 12,
    options.xLabel,
  );
  canvas.text(4, 4, options.yLabel);
  if (options.title) {
    canvas.textRight(plot.right, 4, options.title);
  }
  return { canvas, x, y, plot };
}

export const SERIES_COLORS: Rgb[] = [
  [31, 119, 180],
  [214, 39, 40],
  [44, 160, 44],
  [255, 127, 14],
  [148, 103, 189],
  [23, 190, 207],
];

export function seriesColor(index: number): Rgb {
  return SERIES_COLORS[index % SERIES_COLORS.length] as Rgb;
}
