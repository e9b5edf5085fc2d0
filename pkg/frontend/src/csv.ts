import { readFileSync } from "node:fs";

export const EXPECTED_HEADER =
  "axis,axis_value,method,mean_sr,std_sr,mean_iters,flops";

export interface SweepRow {
  axis: string;
  axisValue: number;
  method: string;
  meanSr: number;
  stdSr: number;
  meanIters: number;
  flops: number;
}

/** Parse one sweep CSV produced by the simulation CLI. */
export function parseSweepCsv(text: string): SweepRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV: missing header");
  }
  if (lines[0] !== EXPECTED_HEADER) {
    throw new Error(
      `unexpected CSV header: got "${lines[0]}", expected "${EXPECTED_HEADER}"`,
    );
  }
  if (lines.length === 1) {
    throw new Error("no data rows");
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 7) {
      throw new Error(`row ${i + 1}: expected 7 fields, got ${parts.length}`);
    }
    const numeric = [parts[1], parts[3], parts[4], parts[5], parts[6]].map(Number);
    if (numeric.some((v) => !Number.isFinite(v))) {
      throw new Error(`row ${i + 1}: non-numeric value in "${lines[i]}"`);
    }
    rows.push({
      axis: parts[0],
      axisValue: numeric[0],
      method: parts[2],
      meanSr: numeric[1],
      stdSr: numeric[2],
      meanIters: numeric[3],
      flops: numeric[4],
    });
  }
  return rows;
}

export function readSweepCsv(path: string): SweepRow[] {
  return parseSweepCsv(readFileSync(path, "utf8"));
}

/** Preserve first-seen method order so legends match the CSV. */
export function methodOrder(rows: readonly SweepRow[]): string[] {
  const seen: string[] = [];
  for (const row of rows) {
    if (!seen.includes(row.method)) seen.push(row.method);
  }
  return seen;
}

export function seriesFor(
  rows: readonly SweepRow[],
  method: string,
  yField: "meanSr" | "flops",
): { x: number[]; y: number[] } {
  const x: number[] = [];
  const y: number[] = [];
  for (const row of rows) {
    if (row.method === method) {
      x.push(row.axisValue);
      y.push(row[yField]);
    }
  }
  return { x, y };
}
