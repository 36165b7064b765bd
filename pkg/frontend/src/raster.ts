/** Fixed-size RGBA raster with the handful of drawing ops the figures need. */

import { GLYPH_ADVANCE, GLYPH_HEIGHT, GLYPH_WIDTH, glyphRows, textWidth } from "./font.js";
import { encodePng } from "./png.js";

export type Rgb = readonly [number, number, number];

export const WHITE: Rgb = [255, 255, 255];
export const BLACK: Rgb = [30, 30, 30];
export const GRAY: Rgb = [140, 140, 140];

export class Canvas {
  readonly width: number;
  readonly height: number;
  private readonly pixels: Uint8Array;

  constructor(width: number, height: number, background: Rgb = WHITE) {
    this.width = width;
    this.height = height;
    this.pixels = new Uint8Array(width * height * 4);
    for (let i = 0; i < width * height; i++) {
      this.pixels[i * 4] = background[0];
      this.pixels[i * 4 + 1] = background[1];
      this.pixels[i * 4 + 2] = background[2];
      this.pixels[i * 4 + 3] = 255;
    }
  }

  set(x: number, y: number, color: Rgb): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (Math.trunc(y) * this.width + Math.trunc(x)) * 4;
    this.pixels[i] = color[0];
    this.pixels[i + 1] = color[1];
    this.pixels[i + 2] = color[2];
    this.pixels[i + 3] = 255;
  }

  get(x: number, y: number): Rgb {
    const i = (Math.trunc(y) * this.width + Math.trunc(x)) * 4;
    return [this.pixels[i] ?? 0, this.pixels[i + 1] ?? 0, this.pixels[i + 2] ?? 0];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Rgb): void {
    const x0 = Math.max(0, Math.trunc(x));
    const y0 = Math.max(0, Math.trunc(y));
    const x1 = Math.min(this.width, Math.trunc(x + w));
    const y1 = Math.min(this.height, Math.trunc(y + h));
    for (let yy = y0; yy < y1; yy++) {
      for (let xx = x0; xx < x1; xx++) {
        this.set(xx, yy, color);
      }
    }
  }

  /** Bresenham line; dash = [on, off] pixel counts, solid when omitted. */
  line(x0: number, y0: number, x1: number, y1: number, color: Rgb, dash?: readonly [number, number]): void {
    let x = Math.trunc(x0);
    let y = Math.trunc(y0);
    const xe = Math.trunc(x1);
    const ye = Math.trunc(y1);
    const dx = Math.abs(xe - x);
    const dy = -Math.abs(ye - y);
    const sx = x < xe ? 1 : -1;
    const sy = y < ye ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    const period = dash ? dash[0] + dash[1] : 1;
    for (;;) {
      if (!dash || step % period < dash[0]) {
        this.set(x, y, color);
      }
      if (x === xe && y === ye) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step += 1;
    }
  }

  marker(x: number, y: number, color: Rgb): void {
    this.fillRect(x - 1, y - 1, 3, 3, color);
  }

  /** Top-left anchored text; unknown characters advance blank. */
  text(x: number, y: number, content: string, color: Rgb = BLACK): void {
    let cx = Math.trunc(x);
    const cy = Math.trunc(y);
    for (const ch of content) {
      const rows = glyphRows(ch);
      if (rows) {
        for (let r = 0; r < GLYPH_HEIGHT; r++) {
          const row = rows[r] ?? "";
          for (let c = 0; c < GLYPH_WIDTH; c++) {
            if (row[c] === "#") this.set(cx + c, cy + r, color);
          }
        }
      }
      cx += GLYPH_ADVANCE;
    }
  }

  textRight(x: number, y: number, content: string, color: Rgb = BLACK): void {
    this.text(x - textWidth(content), y, content, color);
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.pixels);
  }
}
