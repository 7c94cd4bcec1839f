import { describe, expect, it } from "vitest";

import { parsePanelText } from "../src/csv";
import { objectSpeed, parseTraceText } from "../src/tracelog";
import { makeTraceText, symmetricPanel } from "./fixtures";

describe("panel csv parser", () => {
  it("reads labels, values, and missing cells", () => {
    const text = ",x0,x1\nx0,1,\nx1,,0.5\n";
    const panel = parsePanelText(text);
    expect(panel.rowLabels).toEqual(["x0", "x1"]);
    expect(panel.colLabels).toEqual(["x0", "x1"]);
    expect(panel.values).toEqual([
      [1, null],
      [null, 0.5],
    ]);
  });

  it("names the file and row on malformed input", () => {
    expect(() => parsePanelText("x0,x1\n1,2\n", "panel_A.csv")).toThrow(/panel_A\.csv/);
    expect(() => parsePanelText(",x0,x1\nx0,1\n", "panel_B.csv")).toThrow(/row 0/);
    expect(() => parsePanelText(",x0\nx0,banana\n", "p")).toThrow(/unparseable/);
  });

  it("parses the 17-digit numbers the pipeline writes", () => {
    const panel = parsePanelText(symmetricPanel(4));
    expect(panel.values[0][0]).toBe(1.0);
    expect(panel.values[1][2]).toBeCloseTo(Math.cos(1.2) * 0.8, 12);
  });
});

describe("trace parser", () => {
  it("reads header, haptics, and occlusion-masked object track", () => {
    const text = makeTraceText({ steps: 60, contactRanges: [[20, 24]], occludedRanges: [[40, 45]] });
    const log = parseTraceText(text);
    expect(log.steps).toBe(60);
    expect(log.dt).toBeCloseTo(1 / 60, 12);
    expect(log.h[1][22]).toBe(1);
    expect(log.h[1][10]).toBe(0);
    expect(log.x6[42]).toBeNull();
    expect(log.x6[10]).not.toBeNull();
  });

  it("rejects missing header keys, bad rows, and checksum damage", () => {
    const text = makeTraceText({ steps: 10 });
    expect(() => parseTraceText(text.replace("# dt=0.016666666666666666\n", ""))).toThrow(/dt/);
    const corrupted = text.replace("0.500000000", "0.600000000");
    expect(() => parseTraceText(corrupted)).toThrow(/checksum/);
    const truncated = text.slice(0, text.length - 40);
    expect(() => parseTraceText(truncated)).toThrow(/checksum|rows|fields/);
  });

  it("derives object speed with gaps at occlusions", () => {
    const log = parseTraceText(
      makeTraceText({ steps: 50, contactRanges: [[10, 14]], occludedRanges: [[30, 34]] })
    );
    const speed = objectSpeed(log);
    expect(speed[0]).toBeNull();
    expect(speed[12]).toBeGreaterThan(0.5); // being pushed
    expect(speed[31]).toBeNull(); // hidden
    expect(speed[35]).toBeNull(); // first frame back needs two visible frames
    expect(speed[36]).not.toBeNull();
  });
});
