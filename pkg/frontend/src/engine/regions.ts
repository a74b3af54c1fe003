/**
 * Region selection, buffering, playback planning, and boundary watching.
 * The buffer snapshots focus samples (values, not references) ordered
 * front-to-back by Z then left-to-right by X.
 */

import { cellOf, normalize, rectangleAt } from "./dataset.js";
import { DEFAULT_SOUND, SonificationConfig } from "./sonify.js";
import {
  Dataset,
  DatasetStats,
  EngineError,
  EventEnvelope,
  FocusSample,
  GridModel,
  PlanEntry,
} from "./types.js";

export class EmptyBufferError extends EngineError {}
export class NoBufferStoredError extends EngineError {}

export interface Bounds {
  rowMin: number;
  rowMax: number;
  colMin: number;
  colMax: number;
}

export type SelectionPhase = "inactive" | "anchored" | "expanding";

export interface SelectionState {
  phase: SelectionPhase;
  anchor: [number, number] | null;
  cursorCorner: [number, number] | null;
}

export const INACTIVE_SELECTION: SelectionState = {
  phase: "inactive",
  anchor: null,
  cursorCorner: null,
};

export interface RegionBuffer {
  bounds: Bounds;
  items: FocusSample[];
  playbackMode: "sequential" | "aggregated";
  gPressParity: number;
}

export function boundsFromCorners(a: [number, number], b: [number, number]): Bounds {
  return {
    rowMin: Math.min(a[0], b[0]),
    rowMax: Math.max(a[0], b[0]),
    colMin: Math.min(a[1], b[1]),
    colMax: Math.max(a[1], b[1]),
  };
}

export function boundsContain(bounds: Bounds, cell: [number, number]): boolean {
  const [row, col] = cell;
  return row >= bounds.rowMin && row <= bounds.rowMax && col >= bounds.colMin && col <= bounds.colMax;
}

export function dimensionsText(sel: SelectionState): string {
  const b = boundsFromCorners(sel.anchor!, sel.cursorCorner!);
  return `${b.rowMax - b.rowMin + 1} by ${b.colMax - b.colMin + 1}`;
}

function focusSample(
  x: number,
  y: number,
  z: number,
  kind: "rectangle" | "point",
  stats: DatasetStats,
): FocusSample {
  return {
    x,
    y,
    z,
    x_norm: normalize(x, "x", stats),
    y_norm: normalize(y, "y", stats),
    z_norm: normalize(z, "z", stats),
    kind,
  };
}

export function collectItems(
  bounds: Bounds,
  mode: "surface" | "point",
  grid: GridModel,
  dataset: Dataset,
  stats: DatasetStats,
): FocusSample[] {
  const keyed: Array<{ key: [number, number, number]; item: FocusSample }> = [];
  if (mode === "surface") {
    for (let row = bounds.rowMin; row <= bounds.rowMax; row++) {
      for (let col = bounds.colMin; col <= bounds.colMax; col++) {
        const rect = rectangleAt(grid, row, col);
        if (rect.empty) continue;
        keyed.push({
          key: [rect.centerZ, rect.centerX, rect.index],
          item: focusSample(rect.centerX, rect.avgY, rect.centerZ, "rectangle", stats),
        });
      }
    }
  } else {
    dataset.points.forEach((p, i) => {
      if (boundsContain(bounds, cellOf(grid, p.x, p.z))) {
        keyed.push({ key: [p.z, p.x, i], item: focusSample(p.x, p.y, p.z, "point", stats) });
      }
    });
  }
  keyed.sort((a, b) => a.key[0] - b.key[0] || a.key[1] - b.key[1] || a.key[2] - b.key[2]);
  return keyed.map((k) => k.item);
}

export function confirmSelection(
  sel: SelectionState,
  mode: "surface" | "point",
  grid: GridModel,
  dataset: Dataset,
  stats: DatasetStats,
): { buffer: RegionBuffer; events: EventEnvelope[] } {
  const bounds = boundsFromCorners(sel.anchor!, sel.cursorCorner!);
  const items = collectItems(bounds, mode, grid, dataset, stats);
  const buffer: RegionBuffer = { bounds, items, playbackMode: "sequential", gPressParity: 0 };
  const nRows = bounds.rowMax - bounds.rowMin + 1;
  const nCols = bounds.colMax - bounds.colMin + 1;
  const events: EventEnvelope[] = [
    {
      name: "drag-select-selection-confirmed",
      payload: {
        bounds: {
          row_min: bounds.rowMin,
          row_max: bounds.rowMax,
          col_min: bounds.colMin,
          col_max: bounds.colMax,
        },
        item_count: items.length,
      },
    },
    { name: "announce", payload: { text: `Buffer saved: ${nRows} by ${nCols} region` } },
  ];
  return { buffer, events };
}

export function aggregateMean(buffer: RegionBuffer): number {
  if (buffer.items.length === 0) throw new EmptyBufferError("buffer holds no items");
  let sum = 0;
  for (const item of buffer.items) sum += item.y;
  return sum / buffer.items.length;
}

export function sequenceOrder(buffer: RegionBuffer): FocusSample[] {
  if (buffer.items.length === 0) throw new EmptyBufferError("buffer holds no items");
  return buffer.items
    .map((item, i) => ({ item, i }))
    .sort((a, b) => a.item.z - b.item.z || a.item.x - b.item.x || a.i - b.i)
    .map((e) => e.item);
}

export function aggregateFocus(buffer: RegionBuffer, stats: DatasetStats): FocusSample {
  const meanY = aggregateMean(buffer);
  let cx = 0;
  let cz = 0;
  for (const item of buffer.items) {
    cx += item.x;
    cz += item.z;
  }
  cx /= buffer.items.length;
  cz /= buffer.items.length;
  return focusSample(cx, meanY, cz, "rectangle", stats);
}

export function playbackPlan(
  buffer: RegionBuffer | null,
  stats: DatasetStats,
  sound: SonificationConfig = DEFAULT_SOUND,
): { buffer: RegionBuffer; plan: PlanEntry[] } {
  if (buffer === null) throw new NoBufferStoredError("no region selection stored");
  if (buffer.items.length === 0) throw new EmptyBufferError("stored region holds no items");

  const presses = buffer.gPressParity + 1;
  const mode = presses % 2 === 1 ? "sequential" : "aggregated";
  const next: RegionBuffer = { ...buffer, gPressParity: presses, playbackMode: mode };

  if (mode === "sequential") {
    const step = sound.seqItemDurS + sound.seqGapS;
    const plan = sequenceOrder(next).map((item, k) => ({
      focus: item,
      start_s: k * step,
      dur_s: sound.seqItemDurS,
      aggregated: false,
    }));
    return { buffer: next, plan };
  }
  return {
    buffer: next,
    plan: [
      { focus: aggregateFocus(next, stats), start_s: 0, dur_s: sound.aggregateDurS, aggregated: true },
    ],
  };
}

export function boundaryWatch(
  buffer: RegionBuffer | null,
  cell: [number, number],
  wasInside: boolean,
): { inside: boolean; event: EventEnvelope | null } {
  if (buffer === null) return { inside: false, event: null };
  const inside = boundsContain(buffer.bounds, cell);
  if (inside === wasInside) return { inside, event: null };
  const text = inside ? "Entered selection" : "Left selection";
  return { inside, event: { name: "announce", payload: { text } } };
}

export function exportBuffer(buffer: RegionBuffer): object {
  return {
    bounds: {
      row_min: buffer.bounds.rowMin,
      row_max: buffer.bounds.rowMax,
      col_min: buffer.bounds.colMin,
      col_max: buffer.bounds.colMax,
    },
    items: buffer.items,
    mode: buffer.playbackMode,
  };
}
