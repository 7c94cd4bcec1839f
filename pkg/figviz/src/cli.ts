#!/usr/bin/env node
/**
 * figviz: PNG renderings of pipeline artifacts.
 *
 *   figviz panels <panelsDir> <outDir> [--limit L] [--font-scale N]
 *       renders panel_A..D.csv as heatmaps plus a 2x2 composite
 *
 *   figviz contact <tracePath> <outPath> --point N [--window a:b]
 *       plots the point's haptic trace and the object speed around a
 *       contact episode (defaults to the first contact window found)
 *
 * Exits nonzero with the offending file named on any malformed input.
 */

import * as fs from "fs";
import * as path from "path";

import { readPanel } from "./csv";
import { readTrace } from "./tracelog";
import { renderComposite, renderHeatmap } from "./heatmap";
import { contactWindows, renderContactEpisode } from "./contact";
import { Canvas } from "./draw";

const PANEL_TAGS = ["A", "B", "C", "D"] as const;

function parseFlags(args: string[]): { positional: string[]; flags: Map<string, string> } {
  const positional: string[] = [];
  const flags = new Map<string, string>();
  for (let i = 0; i < args.length; i++) {
    if (args[i].startsWith("--")) {
      const key = args[i].slice(2);
      const value = args[i + 1];
      if (value === undefined) throw new Error(`flag --${key} needs a value`);
      flags.set(key, value);
      i++;
    } else {
      positional.push(args[i]);
    }
  }
  return { positional, flags };
}

export function renderPanelsCommand(
  panelsDir: string,
  outDir: string,
  limit = 1.0,
  fontScale = 1
): string[] {
  fs.mkdirSync(outDir, { recursive: true });
  const rendered = new Map<string, Canvas>();
  const written: string[] = [];
  for (const tag of PANEL_TAGS) {
    const panel = readPanel(path.join(panelsDir, `panel_${tag}.csv`));
    const canvas = renderHeatmap(panel, {
      colorLimit: limit,
      fontScale,
      title: `panel ${tag} (${panel.rowLabels.length}x${panel.colLabels.length})`,
    });
    rendered.set(tag, canvas);
    const file = path.join(outDir, `panel_${tag}.png`);
    fs.writeFileSync(file, canvas.toPng());
    written.push(file);
  }
  const composite = path.join(outDir, "panels_composite.png");
  fs.writeFileSync(composite, renderComposite(rendered).toPng());
  written.push(composite);
  return written;
}

export function renderContactCommand(
  tracePath: string,
  outPath: string,
  pointId: number,
  window?: { start: number; end: number }
): string {
  const log = readTrace(tracePath);
  let win = window;
  if (!win) {
    const found = contactWindows(log, pointId);
    if (found.length === 0) {
      throw new Error(`no contact of s${pointId} anywhere in ${tracePath}`);
    }
    const first = found[0];
    const margin = 30;
    win = {
      start: Math.max(0, first.start - margin),
      end: Math.min(log.steps - 1, first.end + margin),
    };
  }
  const canvas = renderContactEpisode(log, pointId, win);
  fs.mkdirSync(path.dirname(outPath), { recursive: true });
  fs.writeFileSync(outPath, canvas.toPng());
  return outPath;
}

export function main(argv: string[]): number {
  try {
    const [command, ...rest] = argv;
    if (command === "panels") {
      const { positional, flags } = parseFlags(rest);
      if (positional.length !== 2) throw new Error("usage: figviz panels <panelsDir> <outDir>");
      const written = renderPanelsCommand(
        positional[0],
        positional[1],
        Number(flags.get("limit") ?? "1"),
        Number(flags.get("font-scale") ?? "1")
      );
      for (const file of written) console.log(`wrote ${file}`);
      return 0;
    }
    if (command === "contact") {
      const { positional, flags } = parseFlags(rest);
      if (positional.length !== 2 || !flags.has("point")) {
        throw new Error("usage: figviz contact <tracePath> <outPath> --point N [--window a:b]");
      }
      let window;
      if (flags.has("window")) {
        const [a, b] = flags.get("window")!.split(":").map(Number);
        if (!Number.isInteger(a) || !Number.isInteger(b)) {
          throw new Error(`unparseable window ${flags.get("window")}`);
        }
        window = { start: a, end: b };
      }
      const file = renderContactCommand(
        positional[0],
        positional[1],
        Number(flags.get("point")),
        window
      );
      console.log(`wrote ${file}`);
      return 0;
    }
    throw new Error("usage: figviz <panels|contact> ...");
  } catch (err) {
    console.error(`figviz: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
