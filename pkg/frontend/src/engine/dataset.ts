/**
 * Dataset ingestion, statistics, normalization, and grid binning.
 *
 * Mirrors the engine's data layer over the shared CSV format. Cell means
 * use plain sequential summation so they are bit-identical with the
 * reference implementation on the same input bytes.
 */

import {
  AxisMeta,
  AxisStats,
  Dataset,
  DatasetStats,
  EngineError,
  GridModel,
  GridRectangle,
  LatticeInfo,
  Point,
} from "./types.js";

export class DatasetError extends EngineError {}

function parseAxisName(name: string): AxisMeta {
  const match = name.match(/^(.*)\(([^)]*)\)\s*$/);
  if (match) {
    return { label: match[1].trim(), unit: match[2].trim() };
  }
  return { label: name.trim(), unit: "" };
}

export function parseDataset(csvText: string, sourceName = ""): Dataset {
  const lines = csvText.split(/\r?\n/).filter((line) => line.trim() !== "");
  if (lines.length === 0) throw new DatasetError("no header row");
  const header = lines[0].split(",").map((c) => c.trim());
  if (header.length !== 3 || header.some((h) => h === "")) {
    throw new DatasetError("header must name exactly three columns");
  }
  const axisMeta = header.map(parseAxisName) as [AxisMeta, AxisMeta, AxisMeta];

  const points: Point[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 3) {
      throw new DatasetError(`malformed row ${i - 1}: expected 3 fields`);
    }
    const coords = parts.map((part) => {
      const trimmed = part.trim();
      if (trimmed === "" || !/^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$/.test(trimmed)) {
        throw new DatasetError(`malformed row ${i - 1}: non-numeric field ${part.trim()}`);
      }
      const value = Number(trimmed);
      if (!Number.isFinite(value)) {
        throw new DatasetError(`non-finite value at row ${i - 1}`);
      }
      return value;
    });
    points.push({ x: coords[0], y: coords[1], z: coords[2] });
  }
  if (points.length === 0) throw new DatasetError("header present but no data rows");
  return { points, axisMeta, sourceName };
}

function axisValues(dataset: Dataset, axis: "x" | "y" | "z"): number[] {
  return dataset.points.map((p) => p[axis]);
}

function axisStats(values: number[]): AxisStats {
  const n = values.length;
  let min = values[0];
  let max = values[0];
  let sum = 0;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
    sum += v;
  }
  const mean = sum / n;
  let sq = 0;
  for (const v of values) sq += (v - mean) * (v - mean);
  const std = Math.sqrt(sq / n);

  const sorted = [...values].sort((a, b) => a - b);
  const median =
    n % 2 === 1 ? sorted[(n - 1) / 2] : (sorted[n / 2 - 1] + sorted[n / 2]) / 2;

  const counts = new Map<number, number>();
  for (const v of values) counts.set(v, (counts.get(v) ?? 0) + 1);
  let mode = sorted[0];
  let best = 0;
  for (const [v, count] of counts) {
    if (count > best || (count === best && v < mode)) {
      mode = v;
      best = count;
    }
  }
  return { min, max, mean, median, std, range: max - min, mode };
}

export function computeStats(dataset: Dataset): DatasetStats {
  const ys = axisValues(dataset, "y");
  const yStats = axisStats(ys);
  let skew = 0;
  if (yStats.std !== 0) {
    let cubes = 0;
    for (const v of ys) {
      const t = (v - yStats.mean) / yStats.std;
      cubes += t * t * t;
    }
    skew = cubes / ys.length;
  }
  return {
    x: axisStats(axisValues(dataset, "x")),
    y: yStats,
    z: axisStats(axisValues(dataset, "z")),
    count: dataset.points.length,
    ySkewness: skew,
  };
}

export function normalize(value: number, axis: "x" | "y" | "z", stats: DatasetStats): number {
  const a = stats[axis];
  if (a.range === 0) return 0.5;
  return Math.min(1, Math.max(0, (value - a.min) / a.range));
}

function binIndex(value: number, lo: number, hi: number, nCells: number): number {
  if (hi === lo) return 0;
  const idx = Math.floor(((value - lo) / (hi - lo)) * nCells);
  return Math.min(Math.max(idx, 0), nCells - 1);
}

export function buildGrid(dataset: Dataset, rows = 20, cols = 20): GridModel {
  if (rows < 1 || cols < 1) throw new DatasetError("grid needs at least 1x1 cells");
  const xs = axisValues(dataset, "x");
  const zs = axisValues(dataset, "z");
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  const zMin = Math.min(...zs);
  const zMax = Math.max(...zs);

  const members: number[][] = Array.from({ length: rows * cols }, () => []);
  dataset.points.forEach((p, i) => {
    const col = binIndex(p.x, xMin, xMax, cols);
    const row = binIndex(p.z, zMin, zMax, rows);
    members[row * cols + col].push(i);
  });

  const cellW = (xMax - xMin) / cols;
  const cellD = (zMax - zMin) / rows;
  const rectangles: GridRectangle[] = [];
  for (let row = 0; row < rows; row++) {
    for (let col = 0; col < cols; col++) {
      const index = row * cols + col;
      const cellMembers = members[index];
      let avgY = 0;
      if (cellMembers.length > 0) {
        let sum = 0;
        for (const i of cellMembers) sum += dataset.points[i].y;
        avgY = sum / cellMembers.length;
      }
      rectangles.push({
        index,
        centerX: xMin + (col + 0.5) * cellW,
        centerZ: zMin + (row + 0.5) * cellD,
        avgY,
        memberIndices: cellMembers,
        empty: cellMembers.length === 0,
      });
    }
  }
  return { rows, cols, rectangles, xMin, xMax, zMin, zMax };
}

export function rectangleAt(grid: GridModel, row: number, col: number): GridRectangle {
  return grid.rectangles[row * grid.cols + col];
}

export function cellOf(grid: GridModel, x: number, z: number): [number, number] {
  return [
    binIndex(z, grid.zMin, grid.zMax, grid.rows),
    binIndex(x, grid.xMin, grid.xMax, grid.cols),
  ];
}

export function detectLattice(dataset: Dataset): LatticeInfo | null {
  const xs = [...new Set(dataset.points.map((p) => p.x))].sort((a, b) => a - b);
  const zs = [...new Set(dataset.points.map((p) => p.z))].sort((a, b) => a - b);
  const nx = xs.length;
  const nz = zs.length;
  if (nx * nz !== dataset.points.length) return null;

  const pts = dataset.points;
  let xFastest = true;
  for (let i = 0; i < pts.length; i++) {
    if (pts[i].x !== xs[i % nx] || pts[i].z !== zs[Math.floor(i / nx)]) {
      xFastest = false;
      break;
    }
  }
  if (xFastest) return { nx, nz, xStride: 1, zStride: nx };
  let zFastest = true;
  for (let i = 0; i < pts.length; i++) {
    if (pts[i].x !== xs[Math.floor(i / nz)] || pts[i].z !== zs[i % nz]) {
      zFastest = false;
      break;
    }
  }
  if (zFastest) return { nx, nz, xStride: nz, zStride: 1 };
  return null;
}

export function latticePosition(info: LatticeInfo, index: number): [number, number] {
  if (info.xStride === 1) return [Math.floor(index / info.nx), index % info.nx];
  return [index % info.nz, Math.floor(index / info.nz)];
}

/** Builtin surfaces for the dataset buttons; same shapes as the engine's. */
export function generateSynthetic(kind: "gaussian" | "sinusoidal" | "benzene_like"): Dataset {
  const axes = (label: string, unit = ""): AxisMeta => ({ label, unit });
  if (kind === "gaussian") {
    const n = 50;
    const extent = 3;
    const axis = Array.from({ length: n }, (_v, i) => -extent + (2 * extent * i) / (n - 1));
    const points: Point[] = [];
    for (const z of axis) for (const x of axis) points.push({ x, y: Math.exp(-(x * x + z * z)), z });
    return { points, axisMeta: [axes("x"), axes("height"), axes("z")], sourceName: "gaussian" };
  }
  if (kind === "sinusoidal") {
    const n = 40;
    const k = 2 * Math.PI * 2;
    const axis = Array.from({ length: n }, (_v, i) => i / (n - 1));
    const points: Point[] = [];
    for (const z of axis) for (const x of axis) points.push({ x, y: Math.sin(k * x) * Math.sin(k * z), z });
    return { points, axisMeta: [axes("x"), axes("height"), axes("z")], sourceName: "sinusoidal" };
  }
  const xs = Array.from({ length: 41 }, (_v, i) => 120 + 2 * i);
  const zs = Array.from({ length: 76 }, (_v, j) => Math.round(0.2 * j * 1e10) / 1e10);
  const points: Point[] = [];
  for (const z of zs) {
    for (const x of xs) {
      const peak = 2 * Math.exp(-(((x - 180) / 3) ** 2 + ((z - 7.5) / 1.5) ** 2));
      const baseline = 0.02 * Math.exp(-((x - 120) / 40));
      points.push({ x, y: peak + baseline, z });
    }
  }
  return {
    points,
    axisMeta: [axes("wavelength", "nm"), axes("intensity", "AU"), axes("time", "min")],
    sourceName: "benzene_like",
  };
}
