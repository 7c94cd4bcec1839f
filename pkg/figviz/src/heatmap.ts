/** Panel heatmaps: one image per correlation matrix plus a 2x2 composite. */

import { Panel } from "./csv";
import { diverging, MISSING } from "./colormap";
import { BLACK, Canvas, GRAY, WHITE } from "./draw";
import { textWidth } from "./font";

export interface HeatmapOptions {
  /** symmetric color limits [-limit, +limit]; keeps sign rendering honest */
  colorLimit?: number;
  cellSize?: number;
  fontScale?: number;
  title?: string;
}

const CELL = 26;
const TOP = 30; // title + column labels
const BOTTOM = 6;
const COLORBAR_W = 14;

export function renderHeatmap(panel: Panel, opts: HeatmapOptions = {}): Canvas {
  const limit = opts.colorLimit ?? 1.0;
  if (!(limit > 0)) throw new Error("color limit must be positive");
  const cell = opts.cellSize ?? CELL;
  const fs = opts.fontScale ?? 1;
  const left = 8 + Math.max(...panel.rowLabels.map((l) => textWidth(l, fs)), 0) + 4;
  const nr = panel.rowLabels.length;
  const nc = panel.colLabels.length;
  const width = left + nc * cell + 14 + COLORBAR_W + 26;
  const height = Math.max(TOP + nr * cell + BOTTOM, TOP + 110);
  const canvas = new Canvas(width, height);

  if (opts.title) canvas.text(left, 6, opts.title, BLACK, fs);

  for (let j = 0; j < nc; j++) {
    const label = panel.colLabels[j];
    const x = left + j * cell + Math.floor((cell - textWidth(label, fs)) / 2);
    canvas.text(x, TOP - 10, label, BLACK, fs);
  }
  for (let i = 0; i < nr; i++) {
    const label = panel.rowLabels[i];
    const y = TOP + i * cell + Math.floor((cell - 7 * fs) / 2);
    canvas.text(8, y, label, BLACK, fs);
  }

  for (let i = 0; i < nr; i++) {
    for (let j = 0; j < nc; j++) {
      const v = panel.values[i][j];
      const color = v === null ? MISSING : diverging(v, limit);
      canvas.fillRect(left + j * cell, TOP + i * cell, cell - 1, cell - 1, color);
    }
  }

  // colorbar with endpoint and midpoint labels
  const barX = left + nc * cell + 14;
  const barH = Math.min(nr * cell, 100);
  for (let k = 0; k < barH; k++) {
    const v = limit - (2 * limit * k) / (barH - 1);
    const color = diverging(v, limit);
    canvas.fillRect(barX, TOP + k, COLORBAR_W, 1, color);
  }
  canvas.text(barX + COLORBAR_W + 3, TOP - 3, `+${limit}`, BLACK, 1);
  canvas.text(barX + COLORBAR_W + 3, TOP + Math.floor(barH / 2) - 3, "0", BLACK, 1);
  canvas.text(barX + COLORBAR_W + 3, TOP + barH - 4, `-${limit}`, BLACK, 1);
  return canvas;
}

/** 2x2 arrangement of already-rendered panels, labeled by tag. */
export function renderComposite(canvases: Map<string, Canvas>): Canvas {
  const tags = ["A", "B", "C", "D"];
  const pad = 10;
  const colW = [0, 1].map((c) =>
    Math.max(...tags.filter((_, k) => k % 2 === c).map((t) => canvases.get(t)!.width))
  );
  const rowH = [0, 1].map((r) =>
    Math.max(...tags.filter((_, k) => Math.floor(k / 2) === r).map((t) => canvases.get(t)!.height))
  );
  const width = pad * 3 + colW[0] + colW[1];
  const height = pad * 3 + rowH[0] + rowH[1];
  const out = new Canvas(width, height, WHITE);
  tags.forEach((tag, k) => {
    const cx = pad + (k % 2) * (colW[0] + pad);
    const cy = pad + Math.floor(k / 2) * (rowH[0] + pad);
    out.blit(canvases.get(tag)!, cx, cy);
  });
  // faint separators
  out.line(0, pad + rowH[0] + Math.floor(pad / 2), width - 1, pad + rowH[0] + Math.floor(pad / 2), GRAY);
  out.line(pad + colW[0] + Math.floor(pad / 2), 0, pad + colW[0] + Math.floor(pad / 2), height - 1, GRAY);
  return out;
}
