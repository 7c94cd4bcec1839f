/** Contact-episode time series: a point's haptic trace and object speed. */

import { BLACK, Canvas, Color, GRAY } from "./draw";
import { objectSpeed, TraceLog } from "./tracelog";

const HAPTIC: Color = [30, 140, 60]; // dashed, like the classic contact plot
const SPEED: Color = [40, 70, 200];

export interface ContactWindow {
  start: number;
  end: number; // inclusive
}

/** Contiguous step ranges where the point registers any contact. */
export function contactWindows(log: TraceLog, pointId: number): ContactWindow[] {
  const h = log.h[pointId];
  const out: ContactWindow[] = [];
  let start = -1;
  for (let t = 0; t < h.length; t++) {
    if (h[t] > 0 && start < 0) start = t;
    if (h[t] <= 0 && start >= 0) {
      out.push({ start, end: t - 1 });
      start = -1;
    }
  }
  if (start >= 0) out.push({ start, end: h.length - 1 });
  return out;
}

export function renderContactEpisode(
  log: TraceLog,
  pointId: number,
  window: ContactWindow
): Canvas {
  if (pointId < 0 || pointId > 6) throw new Error(`point id ${pointId} out of range 0..6`);
  const { start, end } = window;
  if (!(start >= 0 && end < log.steps && start < end)) {
    throw new Error(`window ${start}:${end} outside the ${log.steps}-step log`);
  }
  const h = log.h[pointId].slice(start, end + 1);
  if (!h.some((v) => v > 0)) {
    const windows = contactWindows(log, pointId)
      .slice(0, 8)
      .map((w) => `${w.start}:${w.end}`)
      .join(", ");
    throw new Error(
      `no contact of s${pointId} in window ${start}:${end};` +
        (windows ? ` available contact windows: ${windows}` : " point never makes contact")
    );
  }
  const speed = objectSpeed(log).slice(start, end + 1);

  const width = 560;
  const height = 300;
  const ml = 40;
  const mr = 12;
  const mt = 26;
  const mb = 30;
  const plotW = width - ml - mr;
  const plotH = height - mt - mb;
  const canvas = new Canvas(width, height);

  const speedMax = Math.max(0.5, ...speed.map((v) => v ?? 0));
  const yOf = (v: number, vmax: number) => mt + plotH - Math.round((v / vmax) * (plotH - 2));
  const xOf = (k: number) => ml + Math.round((k / Math.max(1, h.length - 1)) * (plotW - 1));

  // axes
  canvas.line(ml, mt, ml, mt + plotH, BLACK);
  canvas.line(ml, mt + plotH, ml + plotW, mt + plotH, BLACK);
  canvas.text(ml, height - 12, `step ${start}`, BLACK);
  const endLabel = `step ${end}`;
  canvas.text(width - mr - endLabel.length * 6, height - 12, endLabel, BLACK);
  canvas.text(4, mt - 8, "1.0", BLACK);
  canvas.text(4, mt + plotH - 4, "0", BLACK);

  // series: haptic (scale [0,1], dashed), object speed (own scale, solid)
  let px: number | null = null;
  let py: number | null = null;
  for (let k = 0; k < h.length; k++) {
    const x = xOf(k);
    const y = yOf(Math.min(1, h[k]), 1.0);
    if (px !== null && py !== null) canvas.line(px, py, x, y, HAPTIC, 3);
    px = x;
    py = y;
  }
  px = py = null;
  for (let k = 0; k < speed.length; k++) {
    const v = speed[k];
    if (v === null) {
      px = py = null; // occlusion gap breaks the line
      continue;
    }
    const x = xOf(k);
    const y = yOf(Math.min(v, speedMax), speedMax);
    if (px !== null && py !== null) canvas.line(px, py, x, y, SPEED);
    px = x;
    py = y;
  }

  canvas.text(ml + 4, 6, `haptic s${pointId} (dashed, 0..1)`, HAPTIC);
  canvas.text(ml + 4, 16, `object speed (solid, 0..${speedMax.toFixed(1)})`, SPEED);
  canvas.line(ml + plotW - 60, 9, ml + plotW - 40, 9, HAPTIC, 3);
  canvas.line(ml + plotW - 60, 19, ml + plotW - 40, 19, SPEED);
  canvas.text(ml + plotW - 36, 6, "h", HAPTIC);
  canvas.text(ml + plotW - 36, 16, "v", SPEED);
  return canvas;
}
