/** Parser for the panel CSV interchange: labeled matrix, empty = missing. */

import * as fs from "fs";

export interface Panel {
  rowLabels: string[];
  colLabels: string[];
  /** null marks a missing cell */
  values: (number | null)[][];
}

export function parsePanelText(text: string, name = "panel"): Panel {
  const lines = text.split("\n").filter((line) => line.trim() !== "");
  if (lines.length < 2) {
    throw new Error(`${name}: too few rows for a labeled matrix`);
  }
  const header = lines[0].split(",");
  if (header[0] !== "") {
    throw new Error(`${name}: first header field must be empty`);
  }
  const colLabels = header.slice(1);
  const rowLabels: string[] = [];
  const values: (number | null)[][] = [];
  for (let r = 1; r < lines.length; r++) {
    const parts = lines[r].split(",");
    if (parts.length !== colLabels.length + 1) {
      throw new Error(`${name}: row ${r - 1} has ${parts.length - 1} cells, expected ${colLabels.length}`);
    }
    rowLabels.push(parts[0]);
    values.push(
      parts.slice(1).map((cell) => {
        if (cell === "") return null;
        const v = Number(cell);
        if (!Number.isFinite(v)) {
          throw new Error(`${name}: row ${r - 1}: unparseable cell ${JSON.stringify(cell)}`);
        }
        return v;
      })
    );
  }
  return { rowLabels, colLabels, values };
}

export function readPanel(path: string): Panel {
  let text: string;
  try {
    text = fs.readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing or unreadable panel file: ${path}`);
  }
  return parsePanelText(text, path);
}
