import { existsSync, readFileSync, writeFileSync } from "node:fs";
import { methodOrder, readSweepCsv, seriesFor, type SweepRow } from "./csv.js";
import { textWidth } from "./font.js";
import { Canvas, type Rgb } from "./raster.js";

export const FIGURE_KINDS = [
  "sr_vs_ns",
  "sr_vs_snr",
  "sr_vs_dab",
  "sr_vs_theta_cm",
  "mrt_variants",
  "flops_vs_ns",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  csv: string;
  kind: FigureKind;
  out: string;
  xLabel?: string;
  yLabel?: string;
  logX?: boolean;
  logY?: boolean;
  width?: number;
  height?: number;
}

interface KindDefaults {
  xLabel: string;
  yLabel: string;
  yField: "meanSr" | "flops";
  logX: boolean;
  logY: boolean;
}

const KIND_DEFAULTS: Record<FigureKind, KindDefaults> = {
  sr_vs_ns: {
    xLabel: "NUMBER OF IRS ELEMENTS",
    yLabel: "SECRECY RATE (BITS/S/HZ)",
    yField: "meanSr",
    logX: true,
    logY: false,
  },
  sr_vs_snr: {
    xLabel: "SNR (DB)",
    yLabel: "SECRECY RATE (BITS/S/HZ)",
    yField: "meanSr",
    logX: false,
    logY: false,
  },
  sr_vs_dab: {
    xLabel: "ALICE-BOB DISTANCE (M)",
    yLabel: "SECRECY RATE (BITS/S/HZ)",
    yField: "meanSr",
    logX: false,
    logY: false,
  },
  sr_vs_theta_cm: {
    xLabel: "BEAM ANGLE (DEG)",
    yLabel: "SECRECY RATE (BITS/S/HZ)",
    yField: "meanSr",
    logX: false,
    logY: false,
  },
  mrt_variants: {
    xLabel: "NUMBER OF IRS ELEMENTS",
    yLabel: "SECRECY RATE (BITS/S/HZ)",
    yField: "meanSr",
    logX: true,
    logY: false,
  },
  flops_vs_ns: {
    xLabel: "NUMBER OF IRS ELEMENTS",
    yLabel: "FLOPS",
    yField: "flops",
    logX: true,
    logY: true,
  },
};

const PALETTE: Rgb[] = [
  [214, 69, 65], // red
  [31, 119, 180], // blue
  [44, 160, 44], // green
  [148, 103, 189], // purple
  [255, 127, 14], // orange
  [23, 190, 207], // cyan
];

const BLACK: Rgb = [0, 0, 0];
const GREY: Rgb = [210, 210, 210];

export function parseSpecFile(path: string): FigureSpec {
  const raw = JSON.parse(readFileSync(path, "utf8"));
  return validateSpec(raw);
}

export function validateSpec(raw: Partial<FigureSpec>): FigureSpec {
  if (typeof raw.csv !== "string" || typeof raw.out !== "string") {
    throw new Error("figure spec needs 'csv' and 'out' paths");
  }
  if (!FIGURE_KINDS.includes(raw.kind as FigureKind)) {
    throw new Error(
      `unknown figure kind "${raw.kind}"; expected one of ${FIGURE_KINDS.join(", ")}`,
    );
  }
  if (!existsSync(raw.csv)) {
    throw new Error(`input CSV not found: ${raw.csv}`);
  }
  return raw as FigureSpec;
}

function niceTicks(lo: number, hi: number, count: number): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const abs = Math.abs(value);
  if (abs >= 1e5 || abs < 1e-3) {
    const exp = Math.floor(Math.log10(abs));
    const mant = value / Math.pow(10, exp);
    const m = Math.abs(mant - 1) < 1e-9 ? "" : `${Number(mant.toFixed(1))}E`;
    return m === "" ? `1E${exp}` : `${m}${exp}`;
  }
  return `${Number(value.toPrecision(4))}`;
}

/** Render one figure; returns the PNG buffer that was written to spec.out. */
export function render(spec: FigureSpec): Buffer {
  validateSpec(spec);
  const defaults = KIND_DEFAULTS[spec.kind];
  const rows = readSweepCsv(spec.csv);
  const methods = methodOrder(rows);
  const logX = spec.logX ?? defaults.logX;
  const logY = spec.logY ?? defaults.logY;
  const png = renderRows(rows, methods, {
    xLabel: spec.xLabel ?? defaults.xLabel,
    yLabel: spec.yLabel ?? defaults.yLabel,
    yField: defaults.yField,
    logX,
    logY,
    width: spec.width ?? 720,
    height: spec.height ?? 480,
  });
  writeFileSync(spec.out, png);
  return png;
}

interface RenderOptions {
  xLabel: string;
  yLabel: string;
  yField: "meanSr" | "flops";
  logX: boolean;
  logY: boolean;
  width: number;
  height: number;
}

function renderRows(
  rows: readonly SweepRow[],
  methods: readonly string[],
  opt: RenderOptions,
): Buffer {
  const series = methods.map((m) => seriesFor(rows, m, opt.yField));
  const allX = series.flatMap((s) => s.x);
  const allY = series.flatMap((s) => s.y);
  const tx = (v: number) => (opt.logX ? Math.log10(Math.max(v, 1e-300)) : v);
  const ty = (v: number) => (opt.logY ? Math.log10(Math.max(v, 1e-300)) : v);

  const positiveFloor = (vals: number[]) => {
    const pos = vals.filter((v) => v > 0);
    return pos.length > 0 ? Math.min(...pos) : 1;
  };
  const xLo = opt.logX ? positiveFloor(allX) : Math.min(...allX);
  const xHi = Math.max(...allX);
  let yLo = opt.logY ? positiveFloor(allY) : Math.min(...allY);
  let yHi = Math.max(...allY);
  if (yHi === yLo) {
    yHi = yLo + 1;
    yLo = opt.logY ? yLo : yLo - 1;
  }

  const margin = { left: 70, right: 20, top: 20, bottom: 50 };
  const canvas = new Canvas(opt.width, opt.height);
  const plotW = opt.width - margin.left - margin.right;
  const plotH = opt.height - margin.top - margin.bottom;
  const px = (v: number) =>
    margin.left + ((tx(v) - tx(xLo)) / (tx(xHi) - tx(xLo) || 1)) * plotW;
  const py = (v: number) =>
    margin.top + plotH - ((ty(v) - ty(yLo)) / (ty(yHi) - ty(yLo) || 1)) * plotH;

  const xTicks = opt.logX ? logTicks(xLo, xHi) : niceTicks(xLo, xHi, 8);
  const yTicks = opt.logY ? logTicks(yLo, yHi) : niceTicks(yLo, yHi, 8);

  for (const tick of xTicks) {
    const x = px(tick);
    canvas.line(x, margin.top, x, margin.top + plotH, GREY);
    canvas.line(x, margin.top + plotH, x, margin.top + plotH + 4, BLACK);
    const label = formatTick(tick);
    canvas.text(x - textWidth(label) / 2, margin.top + plotH + 8, label, BLACK);
  }
  for (const tick of yTicks) {
    const y = py(tick);
    canvas.line(margin.left, y, margin.left + plotW, y, GREY);
    canvas.line(margin.left - 4, y, margin.left, y, BLACK);
    const label = formatTick(tick);
    canvas.text(margin.left - 8 - textWidth(label), y - 3, label, BLACK);
  }
  canvas.rect(margin.left, margin.top, margin.left + plotW, margin.top + plotH, BLACK);

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    for (let k = 1; k < s.x.length; k++) {
      canvas.line(px(s.x[k - 1]), py(s.y[k - 1]), px(s.x[k]), py(s.y[k]), color, 2);
    }
    // Markers only when the series is sparse enough to read them.
    if (s.x.length <= 32) {
      for (let k = 0; k < s.x.length; k++) {
        canvas.dot(px(s.x[k]), py(s.y[k]), color, 5);
      }
    }
  });

  // Legend, one entry per method, inside the top-left of the plot area.
  const legendX = margin.left + 12;
  let legendY = margin.top + 10;
  methods.forEach((method, i) => {
    const color = PALETTE[i % PALETTE.length];
    canvas.line(legendX, legendY + 3, legendX + 18, legendY + 3, color, 3);
    canvas.text(legendX + 24, legendY, method, BLACK);
    legendY += 12;
  });

  canvas.text(
    margin.left + plotW / 2 - textWidth(opt.xLabel) / 2,
    opt.height - 14,
    opt.xLabel,
    BLACK,
  );
  canvas.textVertical(8, margin.top + plotH / 2 + textWidth(opt.yLabel) / 2, opt.yLabel, BLACK);
  return canvas.toPng();
}
