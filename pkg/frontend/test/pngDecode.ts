/** Just enough PNG reading to probe pixels in our own output (filter 0 only). */

import { inflateSync } from "node:zlib";

export interface DecodedPng {
  width: number;
  height: number;
  get(x: number, y: number): [number, number, number];
}

export function decodePng(buffer: Buffer): DecodedPng {
  let offset = 8; // signature
  let width = 0;
  let height = 0;
  const idat: Buffer[] = [];
  while (offset < buffer.length) {
    const length = buffer.readUInt32BE(offset);
    const type = buffer.subarray(offset + 4, offset + 8).toString("ascii");
    const payload = buffer.subarray(offset + 8, offset + 8 + length);
    if (type === "IHDR") {
      width = payload.readUInt32BE(0);
      height = payload.readUInt32BE(4);
      if (payload[8] !== 8 || payload[9] !== 6) throw new Error("expected 8-bit RGBA");
    } else if (type === "IDAT") {
      idat.push(Buffer.from(payload));
    }
    offset += 12 + length;
  }
  const raw = inflateSync(Buffer.concat(idat));
  const stride = 1 + width * 4;
  return {
    width,
    height,
    get(x, y) {
      if (raw[y * stride] !== 0) throw new Error("unexpected scanline filter");
      const i = y * stride + 1 + x * 4;
      return [raw[i] as number, raw[i + 1] as number, raw[i + 2] as number];
    },
  };
}
