/** In-memory fixtures written in the exact pipeline file formats. */

import * as crypto from "crypto";

export function makePanelText(
  rowLabels: string[],
  colLabels: string[],
  cell: (i: number, j: number) => number | null
): string {
  const lines = ["," + colLabels.join(",")];
  rowLabels.forEach((label, i) => {
    const cells = colLabels.map((_, j) => {
      const v = cell(i, j);
      return v === null ? "" : v.toPrecision(17);
    });
    lines.push(label + "," + cells.join(","));
  });
  return lines.join("\n") + "\n";
}

export function symmetricPanel(n = 4, missingDiagBand = false): string {
  const labels = Array.from({ length: n }, (_, i) => `x${i}`);
  return makePanelText(labels, labels, (i, j) => {
    if (missingDiagBand && Math.abs(i - j) === 1) return null;
    if (i === j) return 1.0;
    return Math.cos(0.4 * (i + j)) * 0.8;
  });
}

const COLUMNS =
  "t," +
  Array.from({ length: 6 }, (_, j) => `m${j}`).join(",") +
  "," +
  Array.from({ length: 6 }, (_, j) => `a${j}`).join(",") +
  "," +
  Array.from({ length: 7 }, (_, i) => `x${i},y${i},h${i}`).join(",") +
  ",vis6";

export interface TraceFixtureOptions {
  steps?: number;
  /** h of s1 is positive over these inclusive step ranges */
  contactRanges?: [number, number][];
  /** object position is hidden over these inclusive step ranges */
  occludedRanges?: [number, number][];
}

export function makeTraceText(opts: TraceFixtureOptions = {}): string {
  const steps = opts.steps ?? 120;
  const contacts = opts.contactRanges ?? [[40, 46]];
  const occluded = opts.occludedRanges ?? [];
  const inRanges = (t: number, ranges: [number, number][]) =>
    ranges.some(([a, b]) => t >= a && t <= b);

  const rows: string[] = [COLUMNS];
  let x6 = -0.5;
  let vx = 0;
  for (let t = 0; t < steps; t++) {
    const touching = inRanges(t, contacts);
    if (touching) vx = -1.2;
    else vx *= 0.7;
    x6 += vx / 60;
    const hidden = inRanges(t, occluded);
    const h1 = touching ? 1 : 0;
    const fields: string[] = [String(t)];
    for (let j = 0; j < 6; j++) fields.push("0");
    for (let j = 0; j < 6; j++) fields.push("0.1");
    for (let i = 0; i < 7; i++) {
      if (i === 6) {
        fields.push(hidden ? "" : x6.toPrecision(9));
        fields.push(hidden ? "" : "1");
        fields.push(touching ? "1" : "0");
      } else {
        fields.push((0.1 * i).toPrecision(9));
        fields.push("0.5");
        fields.push(i === 1 ? String(h1) : "0");
      }
    }
    fields.push(hidden ? "0" : "1");
    rows.push(fields.join(","));
  }
  const data = rows.join("\n") + "\n";
  const checksum = crypto.createHash("sha256").update(Buffer.from(data, "ascii")).digest("hex");
  const header =
    "# format_version=1\n" +
    "# config_hash=fixturehash\n" +
    "# seed=0\n" +
    "# dt=0.016666666666666666\n" +
    "# v_norm_max=10.0\n" +
    "# speed_epsilon=0.0001\n" +
    `# n_rows=${steps}\n` +
    `# checksum=${checksum}\n`;
  return header + data;
}
