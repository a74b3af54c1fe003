/** Shared engine types mirroring the core protocol. */

export interface Point {
  x: number;
  y: number;
  z: number;
}

export interface AxisMeta {
  label: string;
  unit: string;
}

export interface Dataset {
  points: Point[];
  axisMeta: [AxisMeta, AxisMeta, AxisMeta];
  sourceName: string;
}

export interface AxisStats {
  min: number;
  max: number;
  mean: number;
  median: number;
  std: number;
  range: number;
  mode: number;
}

export interface DatasetStats {
  x: AxisStats;
  y: AxisStats;
  z: AxisStats;
  count: number;
  ySkewness: number;
}

export interface GridRectangle {
  index: number;
  centerX: number;
  centerZ: number;
  avgY: number;
  memberIndices: number[];
  empty: boolean;
}

export interface GridModel {
  rows: number;
  cols: number;
  rectangles: GridRectangle[];
  xMin: number;
  xMax: number;
  zMin: number;
  zMax: number;
}

export interface LatticeInfo {
  nx: number;
  nz: number;
  xStride: number;
  zStride: number;
}

export type FocusKind = "rectangle" | "point";

export interface FocusSample {
  x: number;
  y: number;
  z: number;
  x_norm: number;
  y_norm: number;
  z_norm: number;
  kind: FocusKind;
}

// The closed event-name set: anything else is unrepresentable downstream.
export const EVENT_NAMES = [
  "display-mode-changed",
  "drag-select-selection-confirmed",
  "autoplay-state-changed",
  "focus-moved",
  "boundary-hit",
  "announce",
] as const;

export type EventName = (typeof EVENT_NAMES)[number];

export interface EventEnvelope {
  name: EventName;
  payload: Record<string, unknown>;
}

export type AudioRequestKind =
  | "data"
  | "replay"
  | "reference"
  | "peak_positive"
  | "peak_negative"
  | "boundary"
  | "buffer_plan";

export interface AudioRequest {
  kind: AudioRequestKind;
  focus?: FocusSample;
  plan?: PlanEntry[];
}

export type Waveform = "sine" | "triangle" | "square";

export interface AudioParams {
  freq_hz: number;
  waveform: Waveform;
  pan: number;
  gain: number;
  wet: number;
  predelay_ms: number;
  lowpass_hz: number;
  dur_s: number;
  sweep_to_hz?: number;
}

export interface PlanEntry {
  focus: FocusSample;
  start_s: number;
  dur_s: number;
  aggregated: boolean;
}

export interface StepResult {
  events: EventEnvelope[];
  audio: AudioRequest[];
}

export class EngineError extends Error {}
