/** Diverging blue-white-red map on symmetric limits, gray for missing. */

import { Color } from "./draw";

const NEG: Color = [59, 76, 192]; // full negative correlation
const MID: Color = [242, 242, 242];
const POS: Color = [180, 4, 38]; // full positive correlation

export const MISSING: Color = [166, 166, 166];

function lerp(a: Color, b: Color, t: number): Color {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

/** value in [lo, hi] with lo = -hi so that 0 is always the midpoint. */
export function diverging(value: number, limit = 1.0): Color {
  const v = Math.max(-limit, Math.min(limit, value)) / limit;
  return v < 0 ? lerp(MID, NEG, -v) : lerp(MID, POS, v);
}
