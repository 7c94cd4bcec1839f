/** Tiny software canvas: RGB pixels, rects, lines, bitmap text. */

import { encodePng } from "./png";
import { GLYPH_ADVANCE, GLYPH_H, GLYPH_W, glyph } from "./font";

export type Color = readonly [number, number, number];

export const WHITE: Color = [255, 255, 255];
export const BLACK: Color = [20, 20, 20];
export const GRAY: Color = [150, 150, 150];

export class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Color = WHITE) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    this.fillRect(0, 0, width, height, background);
  }

  set(x: number, y: number, color: Color): void {
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 3;
    this.data[i] = color[0];
    this.data[i + 1] = color[1];
    this.data[i + 2] = color[2];
  }

  fillRect(x: number, y: number, w: number, h: number, color: Color): void {
    const x1 = Math.max(0, x);
    const y1 = Math.max(0, y);
    const x2 = Math.min(this.width, x + w);
    const y2 = Math.min(this.height, y + h);
    for (let yy = y1; yy < y2; yy++) {
      for (let xx = x1; xx < x2; xx++) {
        const i = (yy * this.width + xx) * 3;
        this.data[i] = color[0];
        this.data[i + 1] = color[1];
        this.data[i + 2] = color[2];
      }
    }
  }

  /** Bresenham line; `dash` draws only alternating runs of that length. */
  line(x0: number, y0: number, x1: number, y1: number, color: Color, dash = 0): void {
    let x = Math.round(x0);
    let y = Math.round(y0);
    const ex = Math.round(x1);
    const ey = Math.round(y1);
    const dx = Math.abs(ex - x);
    const dy = -Math.abs(ey - y);
    const sx = x < ex ? 1 : -1;
    const sy = y < ey ? 1 : -1;
    let err = dx + dy;
    let step = 0;
    for (;;) {
      if (dash === 0 || Math.floor(step / dash) % 2 === 0) {
        this.set(x, y, color);
      }
      if (x === ex && y === ey) break;
      const e2 = 2 * err;
      if (e2 >= dy) {
        err += dy;
        x += sx;
      }
      if (e2 <= dx) {
        err += dx;
        y += sy;
      }
      step++;
    }
  }

  text(x: number, y: number, s: string, color: Color = BLACK, scale = 1): void {
    let cx = x;
    for (const ch of s) {
      const rows = glyph(ch);
      for (let gy = 0; gy < GLYPH_H; gy++) {
        for (let gx = 0; gx < GLYPH_W; gx++) {
          if (rows[gy][gx] === "1") {
            this.fillRect(cx + gx * scale, y + gy * scale, scale, scale, color);
          }
        }
      }
      cx += GLYPH_ADVANCE * scale;
    }
  }

  /** Letters stacked top to bottom (used for long row labels). */
  textVertical(x: number, y: number, s: string, color: Color = BLACK, scale = 1): void {
    let cy = y;
    for (const ch of s) {
      this.text(x, cy, ch, color, scale);
      cy += (GLYPH_H + 1) * scale;
    }
  }

  blit(src: Canvas, x: number, y: number): void {
    for (let sy = 0; sy < src.height; sy++) {
      for (let sx = 0; sx < src.width; sx++) {
        const i = (sy * src.width + sx) * 3;
        this.set(x + sx, y + sy, [src.data[i], src.data[i + 1], src.data[i + 2]]);
      }
    }
  }

  toPng(): Buffer {
    return encodePng(this.width, this.height, this.data);
  }
}
