#!/usr/bin/env node
/**
 * figure-emitter CLI.
 *
 *   figure-emitter emit --in results.csv --x np --series dl,k --logx --out fig.svg
 *   figure-emitter emit --in results.csv --kind regime-map --x dl --y theta0 --out map.svg
 */

import { parseArgs } from "util";

import { DEFAULTS, emitFigure, PlotSpec } from "./emit.js";

const USAGE = `usage: figure-emitter emit --in CSV --x COLUMN [options]
  --in PATH        input sweep CSV (required)
  --x COLUMN       x-axis column (required)
  --y COLUMN       value column (default ${DEFAULTS.yColumn}; regime-map: ${DEFAULTS.mapYColumn})
  --series COLS    comma-separated grouping columns (one line per group)
  --logx, --logy   log axes
  --kind KIND      series | regime-map (default series)
  --out PATH       output file (required)
  --format FMT     svg | png (default from --out extension)
`;

export function buildSpec(argv: string[]): PlotSpec {
  const { values, positionals } = parseArgs({
    args: argv,
    allowPositionals: true,
    options: {
      in: { type: "string" },
      x: { type: "string" },
      y: { type: "string" },
      series: { type: "string" },
      logx: { type: "boolean", default: false },
      logy: { type: "boolean", default: false },
      kind: { type: "string", default: DEFAULTS.kind },
      out: { type: "string" },
      format: { type: "string" },
    },
  });
  if (positionals.length !== 1 || positionals[0] !== "emit") {
    throw new Error(USAGE);
  }
  if (!values.in || !values.x || !values.out) {
    throw new Error("missing required flag(s): --in, --x, --out\n" + USAGE);
  }
  if (values.kind !== "series" && values.kind !== "regime-map") {
    throw new Error(`unknown kind '${values.kind}' (series | regime-map)`);
  }
  const format = values.format ?? (values.out.endsWith(".png") ? "png" : "svg");
  if (format !== "svg" && format !== "png") {
    throw new Error(`unknown format '${format}' (svg | png)`);
  }
  return {
    input: values.in,
    xColumn: values.x,
    yColumn: values.y ?? (values.kind === "regime-map" ? DEFAULTS.mapYColumn : DEFAULTS.yColumn),
    seriesColumns: values.series ? values.series.split(",").map((s) => s.trim()) : [],
    logX: values.logx,
    logY: values.logy,
    output: values.out,
    format,
    kind: values.kind,
  };
}

export function run(argv: string[]): number {
  try {
    const spec = buildSpec(argv);
    emitFigure(spec);
    console.log(`wrote ${spec.output}`);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

const isMain =
  process.argv[1] !== undefined &&
  new URL(import.meta.url).pathname === process.argv[1];
if (isMain) {
  process.exit(run(process.argv.slice(2)));
}
