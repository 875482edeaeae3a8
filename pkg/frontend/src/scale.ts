/** Linear and log10 axis scales with deterministic tick placement. */

export interface Scale {
  toPixel(v: number): number;
  ticks: number[];
  label(v: number): string;
}

export function fmtNumber(v: number): string {
  if (v === 0) return "0";
  const abs = Math.abs(v);
  if (abs >= 1e5 || abs < 1e-4) {
    return v.toExponential(0).replace("+", "");
  }
  // up to 6 significant digits, trailing zeros trimmed
  return parseFloat(v.toPrecision(6)).toString();
}

function linearTicks(min: number, max: number, target = 6): number[] {
  if (min === max) return [min];
  const rawStep = (max - min) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + step * 1e-9; t += step) {
    ticks.push(Math.abs(t) < step * 1e-9 ? 0 : t);
  }
  return ticks;
}

function logTicks(min: number, max: number): number[] {
  const lo = Math.ceil(Math.log10(min) - 1e-9);
  const hi = Math.floor(Math.log10(max) + 1e-9);
  const ticks: number[] = [];
  for (let e = lo; e <= hi; e++) ticks.push(Math.pow(10, e));
  if (ticks.length === 0) return [min, max];
  return ticks;
}

export function makeScale(
  values: number[],
  pixelMin: number,
  pixelMax: number,
  log: boolean,
  column: string
): Scale {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) {
    throw new Error(`column '${column}' has no finite values to plot`);
  }
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);

  if (log) {
    if (lo <= 0) {
      throw new Error(`log scale requested but column '${column}' has values <= 0`);
    }
    if (lo === hi) {
      lo /= 2;
      hi *= 2;
    }
    const ticks = logTicks(lo, hi);
    const llo = Math.log10(lo);
    const lhi = Math.log10(hi);
    return {
      toPixel: (v) => pixelMin + ((Math.log10(v) - llo) / (lhi - llo)) * (pixelMax - pixelMin),
      ticks,
      label: fmtNumber,
    };
  }

  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  } else {
    const pad = (hi - lo) * 0.05;
    lo -= pad;
    hi += pad;
  }
  return {
    toPixel: (v) => pixelMin + ((v - lo) / (hi - lo)) * (pixelMax - pixelMin),
    ticks: linearTicks(lo, hi),
    label: fmtNumber,
  };
}
