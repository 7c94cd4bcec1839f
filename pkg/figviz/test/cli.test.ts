import * as fs from "fs";
import * as os from "os";
import * as path from "path";

import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { main, renderContactCommand, renderPanelsCommand } from "../src/cli";
import { pngSize } from "../src/png";
import { makeTraceText, symmetricPanel } from "./fixtures";

let dir: string;

beforeEach(() => {
  dir = fs.mkdtempSync(path.join(os.tmpdir(), "figviz-"));
});

afterEach(() => {
  fs.rmSync(dir, { recursive: true, force: true });
});

function writePanels(target: string) {
  fs.mkdirSync(target, { recursive: true });
  for (const tag of ["A", "B", "C", "D"]) {
    fs.writeFileSync(path.join(target, `panel_${tag}.csv`), symmetricPanel(4));
  }
}

describe("panels command", () => {
  it("renders four heatmaps plus the composite", () => {
    const panels = path.join(dir, "panels");
    const out = path.join(dir, "png");
    writePanels(panels);
    const written = renderPanelsCommand(panels, out);
    expect(written.map((f) => path.basename(f))).toEqual([
      "panel_A.png",
      "panel_B.png",
      "panel_C.png",
      "panel_D.png",
      "panels_composite.png",
    ]);
    for (const file of written) {
      const { width, height } = pngSize(fs.readFileSync(file));
      expect(width).toBeGreaterThan(50);
      expect(height).toBeGreaterThan(50);
    }
  });

  it("re-renders byte-identically", () => {
    const panels = path.join(dir, "panels");
    writePanels(panels);
    renderPanelsCommand(panels, path.join(dir, "a"));
    renderPanelsCommand(panels, path.join(dir, "b"));
    for (const tag of ["A", "B", "C", "D"]) {
      const a = fs.readFileSync(path.join(dir, "a", `panel_${tag}.png`));
      const b = fs.readFileSync(path.join(dir, "b", `panel_${tag}.png`));
      expect(a.equals(b)).toBe(true);
    }
  });

  it("fails naming the missing panel file", () => {
    const panels = path.join(dir, "panels");
    fs.mkdirSync(panels);
    fs.writeFileSync(path.join(panels, "panel_A.csv"), symmetricPanel(3));
    expect(() => renderPanelsCommand(panels, path.join(dir, "out"))).toThrow(/panel_B\.csv/);
  });
});

describe("contact command", () => {
  it("auto-locates the first contact window", () => {
    const trace = path.join(dir, "trace.csv");
    fs.writeFileSync(trace, makeTraceText({ steps: 150, contactRanges: [[70, 76]] }));
    const out = renderContactCommand(trace, path.join(dir, "contact.png"), 1);
    expect(fs.existsSync(out)).toBe(true);
  });

  it("honors an explicit window and fails when it has no contact", () => {
    const trace = path.join(dir, "trace.csv");
    fs.writeFileSync(trace, makeTraceText({ steps: 150, contactRanges: [[70, 76]] }));
    renderContactCommand(trace, path.join(dir, "ok.png"), 1, { start: 50, end: 100 });
    expect(() =>
      renderContactCommand(trace, path.join(dir, "no.png"), 1, { start: 0, end: 40 })
    ).toThrow(/available contact windows/);
  });
});

describe("argv entry point", () => {
  it("returns 0 on success and 1 with a message on failure", () => {
    const panels = path.join(dir, "panels");
    writePanels(panels);
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["panels", panels, path.join(dir, "out")])).toBe(0);
    expect(main(["panels", path.join(dir, "nope"), path.join(dir, "out")])).toBe(1);
    expect(err.mock.calls.some((c) => String(c[0]).includes("panel_A.csv"))).toBe(true);
    expect(main(["bogus"])).toBe(1);
    const trace = path.join(dir, "trace.csv");
    fs.writeFileSync(trace, makeTraceText({ steps: 100, contactRanges: [[30, 33]] }));
    expect(main(["contact", trace, path.join(dir, "c.png"), "--point", "1"])).toBe(0);
    expect(
      main(["contact", trace, path.join(dir, "c.png"), "--point", "1", "--window", "50:90"])
    ).toBe(1);
    log.mockRestore();
    err.mockRestore();
  });
});
