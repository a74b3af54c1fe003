/**
 * Statistical peak selection over occupied grid cells.
 *
 * Top and bottom candidate pools are disjoint (the bottom pool is drawn
 * from cells left over after the top pool); a proximity test against the
 * cell-mean decides whether highs, lows, or both survive. Positives sort
 * descending, negatives ascending, ties always by ascending cell index.
 */

import { EngineError, GridModel, GridRectangle } from "./types.js";

export interface SalienceConfig {
  candidateCount: number;
  selectCount: number;
  thresholdFraction: number;
}

export const DEFAULT_SALIENCE: SalienceConfig = {
  candidateCount: 20,
  selectCount: 10,
  thresholdFraction: 0.2,
};

export type PeakSign = "positive" | "negative";

export interface Peak {
  rectIndex: number;
  sign: PeakSign;
  x: number;
  z: number;
  avgY: number;
}

export interface PeakSet {
  peaks: Peak[];
  cursor: number;
}

export class NoRectanglesError extends EngineError {}

export function detectPeaks(grid: GridModel, config: SalienceConfig = DEFAULT_SALIENCE): PeakSet {
  const cells = grid.rectangles.filter((r) => !r.empty);
  if (cells.length === 0) throw new NoRectanglesError("no occupied cells to scan");

  const byHeightDesc = [...cells].sort((a, b) => b.avgY - a.avgY || a.index - b.index);
  const topPool = byHeightDesc.slice(0, config.candidateCount);
  const taken = new Set(topPool.map((r) => `${r.centerX},${r.centerZ},${r.avgY}`));
  const remaining = cells.filter((r) => !taken.has(`${r.centerX},${r.centerZ},${r.avgY}`));
  const bottomPool = remaining
    .sort((a, b) => a.avgY - b.avgY || a.index - b.index)
    .slice(0, config.candidateCount);

  let sum = 0;
  let lo = cells[0].avgY;
  let hi = cells[0].avgY;
  for (const r of cells) {
    sum += r.avgY;
    if (r.avgY < lo) lo = r.avgY;
    if (r.avgY > hi) hi = r.avgY;
  }
  const mean = sum / cells.length;
  const threshold = (hi - lo) * config.thresholdFraction;

  const within = (r: GridRectangle) => Math.abs(r.avgY - mean) <= threshold;
  const lowsAllWithin = bottomPool.every(within);
  const highsAllWithin = topPool.every(within);

  let keepHigh = true;
  let keepLow = true;
  if (lowsAllWithin && !highsAllWithin) keepLow = false;
  else if (highsAllWithin && !lowsAllWithin) keepHigh = false;

  const peaks: Peak[] = [];
  if (keepHigh) {
    for (const r of topPool.slice(0, config.selectCount)) {
      peaks.push({ rectIndex: r.index, sign: "positive", x: r.centerX, z: r.centerZ, avgY: r.avgY });
    }
  }
  if (keepLow) {
    for (const r of bottomPool.slice(0, config.selectCount)) {
      peaks.push({ rectIndex: r.index, sign: "negative", x: r.centerX, z: r.centerZ, avgY: r.avgY });
    }
  }
  return { peaks, cursor: 0 };
}

export function peakPosition(peak: Peak, grid: GridModel): [number, number] {
  return [Math.floor(peak.rectIndex / grid.cols), peak.rectIndex % grid.cols];
}

export function jumpAnnouncement(peakSet: PeakSet, entering: boolean): string {
  const peak = peakSet.peaks[peakSet.cursor];
  const sign = peak.sign === "positive" ? "Positive" : "Negative";
  const prefix = entering ? "Jump mode. " : "";
  return `${prefix}Peak ${peakSet.cursor + 1} of ${peakSet.peaks.length}. ${sign} peak.`;
}
