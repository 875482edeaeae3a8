/**
 * Figure emission from sweep CSV files. Values are plotted exactly as read;
 * nothing is recomputed. Output is deterministic: fixed styles, fixed
 * palette, lexicographic series order, no timestamps.
 */

import { writeFileSync } from "fs";

import { Canvas } from "./canvas.js";
import { num, readHarnessCsv, requireColumn, Row } from "./csv.js";
import { PngCanvas } from "./png.js";
import { makeScale } from "./scale.js";
import { SvgCanvas } from "./svg.js";

export interface PlotSpec {
  input: string;
  xColumn: string;
  yColumn: string;
  seriesColumns: string[];
  logX: boolean;
  logY: boolean;
  output: string;
  format: "svg" | "png";
  kind: "series" | "regime-map";
}

export const DEFAULTS = {
  yColumn: "eps_gaussian",
  mapYColumn: "theta0",
  kind: "series" as const,
};

const WIDTH = 840;
const HEIGHT = 560;
const MARGIN = { top: 40, right: 180, bottom: 55, left: 75 };

const PALETTE = ["#4361ee", "#e63946", "#2d6a4f", "#f4a261", "#7209b7", "#0096c7"];
const REGIME_COLORS: Record<string, string> = {
  coherent: "#2d6a4f",
  intermediate: "#f4a261",
  dephased: "#e63946",
};

export function emitFigure(spec: PlotSpec): void {
  requireColumn(spec.xColumn);
  requireColumn(spec.yColumn);
  spec.seriesColumns.forEach(requireColumn);
  const rows = readHarnessCsv(spec.input);

  const canvas: Canvas =
    spec.format === "png" ? new PngCanvas(WIDTH, HEIGHT) : new SvgCanvas(WIDTH, HEIGHT);
  if (spec.kind === "regime-map") {
    drawRegimeMap(canvas, rows, spec);
  } else {
    drawSeriesChart(canvas, rows, spec);
  }
  writeFileSync(spec.output, canvas.render());
}

// ---------------------------------------------------------------------------

function groupKey(row: Row, columns: string[]): string {
  return columns.map((c) => `${c}=${row[c]}`).join(", ");
}

function drawFrame(canvas: Canvas, title: string): void {
  canvas.text(MARGIN.left, 24, title, { size: 14 });
  const x1 = WIDTH - MARGIN.right;
  const y1 = HEIGHT - MARGIN.bottom;
  canvas.line(MARGIN.left, MARGIN.top, MARGIN.left, y1, "#444444");
  canvas.line(MARGIN.left, y1, x1, y1, "#444444");
}

function drawSeriesChart(canvas: Canvas, rows: Row[], spec: PlotSpec): void {
  const xs = rows.map((r) => num(r, spec.xColumn));
  const ys = rows.map((r) => num(r, spec.yColumn));
  const xScale = makeScale(xs, MARGIN.left, WIDTH - MARGIN.right, spec.logX, spec.xColumn);
  const yScale = makeScale(ys, HEIGHT - MARGIN.bottom, MARGIN.top, spec.logY, spec.yColumn);

  drawFrame(canvas, `${spec.yColumn} vs ${spec.xColumn}`);
  drawAxes(canvas, xScale, yScale, spec.xColumn, spec.yColumn);

  const groups = new Map<string, Row[]>();
  for (const row of rows) {
    const key = spec.seriesColumns.length ? groupKey(row, spec.seriesColumns) : "all rows";
    (groups.get(key) ?? groups.set(key, []).get(key)!).push(row);
  }
  const keys = [...groups.keys()].sort();

  keys.forEach((key, i) => {
    const color = PALETTE[i % PALETTE.length];
    const pts = groups
      .get(key)!
      .map((r): [number, number] => [num(r, spec.xColumn), num(r, spec.yColumn)])
      .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y))
      .sort((a, b) => a[0] - b[0])
      .map(([x, y]): [number, number] => [xScale.toPixel(x), yScale.toPixel(y)]);
    if (pts.length === 0) {
      throw new Error(`series '${key}' has no finite (${spec.xColumn}, ${spec.yColumn}) points`);
    }
    canvas.polyline(pts, color, "series");
    for (const [px, py] of pts) canvas.circle(px, py, 2.5, color);

    const ly = MARGIN.top + 14 + i * 18;
    canvas.line(WIDTH - MARGIN.right + 12, ly - 4, WIDTH - MARGIN.right + 34, ly - 4, color, 2);
    canvas.text(WIDTH - MARGIN.right + 40, ly, key, { size: 11 });
  });
}

function drawRegimeMap(canvas: Canvas, rows: Row[], spec: PlotSpec): void {
  const xValues = [...new Set(rows.map((r) => num(r, spec.xColumn)))].sort((a, b) => a - b);
  const yValues = [...new Set(rows.map((r) => num(r, spec.yColumn)))].sort((a, b) => a - b);
  if (xValues.some((v) => !Number.isFinite(v)) || yValues.some((v) => !Number.isFinite(v))) {
    throw new Error(`regime map needs finite '${spec.xColumn}' and '${spec.yColumn}' values`);
  }

  drawFrame(canvas, `regime over (${spec.xColumn}, ${spec.yColumn})`);
  const plotW = WIDTH - MARGIN.right - MARGIN.left;
  const plotH = HEIGHT - MARGIN.bottom - MARGIN.top;
  const cellW = plotW / xValues.length;
  const cellH = plotH / yValues.length;

  for (const row of rows) {
    const regime = row.regime;
    const color = REGIME_COLORS[regime] ?? "#999999";
    const ix = xValues.indexOf(num(row, spec.xColumn));
    const iy = yValues.indexOf(num(row, spec.yColumn));
    canvas.rect(
      MARGIN.left + ix * cellW + 1,
      HEIGHT - MARGIN.bottom - (iy + 1) * cellH + 1,
      cellW - 2,
      cellH - 2,
      color,
      `cell cell-${regime}`
    );
  }

  // cell-center tick labels with the CSV values verbatim
  xValues.forEach((v, i) => {
    canvas.text(MARGIN.left + (i + 0.5) * cellW, HEIGHT - MARGIN.bottom + 16, String(v), {
      anchor: "middle", size: 11,
    });
  });
  yValues.forEach((v, i) => {
    canvas.text(MARGIN.left - 8, HEIGHT - MARGIN.bottom - (i + 0.5) * cellH + 4, String(v), {
      anchor: "end", size: 11,
    });
  });
  canvas.text((MARGIN.left + WIDTH - MARGIN.right) / 2, HEIGHT - 14, spec.xColumn, {
    anchor: "middle", size: 12,
  });
  canvas.text(20, (MARGIN.top + HEIGHT - MARGIN.bottom) / 2, spec.yColumn, {
    anchor: "middle", size: 12, vertical: true,
  });

  Object.entries(REGIME_COLORS).forEach(([name, color], i) => {
    const ly = MARGIN.top + 14 + i * 18;
    canvas.rect(WIDTH - MARGIN.right + 12, ly - 10, 12, 12, color);
    canvas.text(WIDTH - MARGIN.right + 30, ly, name, { size: 11 });
  });
}

function drawAxes(
  canvas: Canvas,
  xScale: { ticks: number[]; toPixel(v: number): number; label(v: number): string },
  yScale: { ticks: number[]; toPixel(v: number): number; label(v: number): string },
  xName: string,
  yName: string
): void {
  const y0 = HEIGHT - MARGIN.bottom;
  for (const t of xScale.ticks) {
    const px = xScale.toPixel(t);
    canvas.line(px, y0, px, y0 + 5, "#444444");
    canvas.line(px, MARGIN.top, px, y0, "#eeeeee");
    canvas.text(px, y0 + 18, xScale.label(t), { anchor: "middle", size: 11 });
  }
  for (const t of yScale.ticks) {
    const py = yScale.toPixel(t);
    canvas.line(MARGIN.left - 5, py, MARGIN.left, py, "#444444");
    canvas.line(MARGIN.left, py, WIDTH - MARGIN.right, py, "#eeeeee");
    canvas.text(MARGIN.left - 8, py + 4, yScale.label(t), { anchor: "end", size: 11 });
  }
  canvas.text((MARGIN.left + WIDTH - MARGIN.right) / 2, HEIGHT - 14, xName, {
    anchor: "middle", size: 12,
  });
  canvas.text(20, (MARGIN.top + y0) / 2, yName, { anchor: "middle", size: 12, vertical: true });
}
