/** Reader for the pipeline's trace files (header + CSV rows). */

import * as crypto from "crypto";
import * as fs from "fs";

export interface TraceLog {
  header: Record<string, string>;
  dt: number;
  /** haptic channel per sensory point, h[i][t] */
  h: number[][];
  /** object position; null while occluded */
  x6: (number | null)[];
  y6: (number | null)[];
  steps: number;
}

const N_POINTS = 7;

export function parseTraceText(text: string, name = "trace"): TraceLog {
  const lines = text.split("\n");
  const header: Record<string, string> = {};
  let idx = 0;
  let offset = 0;
  while (idx < lines.length && lines[idx].startsWith("#")) {
    const body = lines[idx].slice(1).trim();
    const eq = body.indexOf("=");
    if (eq < 0) throw new Error(`${name}: malformed header line ${idx + 1}`);
    header[body.slice(0, eq).trim()] = body.slice(eq + 1).trim();
    offset += lines[idx].length + 1;
    idx++;
  }
  for (const key of ["dt", "n_rows", "config_hash", "seed", "checksum"]) {
    if (!(key in header)) throw new Error(`${name}: missing header key ${key}`);
  }
  const digest = crypto
    .createHash("sha256")
    .update(Buffer.from(text.slice(offset), "ascii"))
    .digest("hex");
  if (digest !== header["checksum"]) {
    throw new Error(`${name}: checksum mismatch, file corrupted or truncated`);
  }
  if (idx >= lines.length || !lines[idx].startsWith("t,m0,")) {
    throw new Error(`${name}: column header row missing`);
  }
  const columns = lines[idx].split(",");
  idx++;

  const col = (label: string) => {
    const j = columns.indexOf(label);
    if (j < 0) throw new Error(`${name}: column ${label} missing`);
    return j;
  };
  const hCols = Array.from({ length: N_POINTS }, (_, i) => col(`h${i}`));
  const x6Col = col("x6");
  const y6Col = col("y6");
  const visCol = col("vis6");

  const h: number[][] = Array.from({ length: N_POINTS }, () => []);
  const x6: (number | null)[] = [];
  const y6: (number | null)[] = [];
  let row = 0;
  for (; idx < lines.length; idx++) {
    const line = lines[idx];
    if (line === "") continue;
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`${name}: row ${row} has ${parts.length} fields, expected ${columns.length}`);
    }
    for (let i = 0; i < N_POINTS; i++) h[i].push(Number(parts[hCols[i]]));
    const visible = parts[visCol] === "1";
    x6.push(visible ? Number(parts[x6Col]) : null);
    y6.push(visible ? Number(parts[y6Col]) : null);
    row++;
  }
  const expected = Number(header["n_rows"]);
  if (row !== expected) {
    throw new Error(`${name}: expected ${expected} rows, found ${row}`);
  }
  return { header, dt: Number(header["dt"]), h, x6, y6, steps: row };
}

export function readTrace(path: string): TraceLog {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing or unreadable trace file: ${path}`);
  }
  return parseTraceText(text, path);
}

/** Object speed from finite differences; null where either end is occluded. */
export function objectSpeed(log: TraceLog): (number | null)[] {
  const out: (number | null)[] = [null];
  for (let t = 1; t < log.steps; t++) {
    const xa = log.x6[t - 1];
    const xb = log.x6[t];
    const ya = log.y6[t - 1];
    const yb = log.y6[t];
    if (xa === null || xb === null || ya === null || yb === null) {
      out.push(null);
    } else {
      out.push(Math.hypot(xb - xa, yb - ya) / log.dt);
    }
  }
  return out;
}
