/**
 * Strict reader for the sweep harness CSV contract. The emitter never
 * recomputes physics: every plotted value comes out of these rows verbatim.
 */

import { readFileSync } from "fs";

/** Exact column set (and order) written by the sweep harness. */
export const HARNESS_COLUMNS = [
  "model", "np", "dl", "k", "theta0", "dtheta", "dphi", "seed", "runs",
  "eps_empirical_mean", "eps_empirical_se", "eps_gaussian", "eps_walksum",
  "window_term_x", "regime",
] as const;

export type Row = Record<string, string>;

export function parseHarnessCsv(text: string): Row[] {
  const lines = text.split("\n").filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: no header line");
  }
  const header = lines[0].split(",");
  const expected = HARNESS_COLUMNS.join(",");
  if (header.join(",") !== expected) {
    throw new Error(
      `CSV header does not match the harness column set\n  expected: ${expected}\n  got:      ${header.join(",")}`
    );
  }
  if (lines.length === 1) {
    throw new Error("empty CSV: header but no data rows");
  }
  return lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new Error(`row ${i + 1}: expected ${header.length} cells, got ${cells.length}`);
    }
    const row: Row = {};
    header.forEach((name, j) => (row[name] = cells[j]));
    return row;
  });
}

export function readHarnessCsv(path: string): Row[] {
  return parseHarnessCsv(readFileSync(path, "utf-8"));
}

export function requireColumn(name: string): void {
  if (!(HARNESS_COLUMNS as readonly string[]).includes(name)) {
    throw new Error(`column '${name}' does not exist in the harness CSV schema`);
  }
}

/** Numeric cell value; 'nan' cells come back as NaN. */
export function num(row: Row, column: string): number {
  return parseFloat(row[column]);
}
