/**
 * Audio parameter mappings: the UI holds no constants of its own beyond
 * this table, which is conformance-tested against the engine package's
 * exported mapping fixtures.
 */

import { AudioParams, AudioRequestKind, EngineError, FocusSample, Waveform } from "./types.js";

export interface SonificationConfig {
  pitchMinHz: number;
  pitchMaxHz: number;
  wetNear: number;
  wetFar: number;
  predelayNearMs: number;
  predelayFarMs: number;
  lowpassNearHz: number;
  lowpassFarHz: number;
  gainNear: number;
  gainFar: number;
  waveformDriver: "height" | "x_position";
  referenceHz: number;
  referenceDurS: number;
  peakPositiveHz: number;
  peakNegativeHz: number;
  peakSweepRatio: number;
  peakDurS: number;
  boundaryHz: number;
  boundaryDurS: number;
  dataToneDurS: number;
  seqItemDurS: number;
  seqGapS: number;
  aggregateDurS: number;
}

export const DEFAULT_SOUND: SonificationConfig = {
  pitchMinHz: 200,
  pitchMaxHz: 800,
  wetNear: 0.2,
  wetFar: 0.95,
  predelayNearMs: 10,
  predelayFarMs: 90,
  lowpassNearHz: 6500,
  lowpassFarHz: 2000,
  gainNear: 1.0,
  gainFar: 0.3,
  waveformDriver: "height",
  referenceHz: 300,
  referenceDurS: 0.5,
  peakPositiveHz: 800,
  peakNegativeHz: 400,
  peakSweepRatio: 1.5,
  peakDurS: 0.25,
  boundaryHz: 150,
  boundaryDurS: 0.1,
  dataToneDurS: 0.3,
  seqItemDurS: 0.3,
  seqGapS: 0.125,
  aggregateDurS: 1.0,
};

export class OutOfRangeError extends EngineError {}

function checkUnit(name: string, value: number): void {
  if (!(value >= 0 && value <= 1)) throw new OutOfRangeError(`${name}=${value} outside [0, 1]`);
}

export function mapPitch(yNorm: number, cfg: SonificationConfig = DEFAULT_SOUND): number {
  checkUnit("y_norm", yNorm);
  return cfg.pitchMinHz * (cfg.pitchMaxHz / cfg.pitchMinHz) ** yNorm;
}

export function mapPan(xNorm: number): number {
  checkUnit("x_norm", xNorm);
  return 2 * xNorm - 1;
}

export function mapDepth(
  zNorm: number,
  cfg: SonificationConfig = DEFAULT_SOUND,
): [number, number, number, number] {
  checkUnit("z_norm", zNorm);
  const lerp = (near: number, far: number) => near * (1 - zNorm) + far * zNorm;
  return [
    lerp(cfg.gainNear, cfg.gainFar),
    lerp(cfg.wetNear, cfg.wetFar),
    lerp(cfg.predelayNearMs, cfg.predelayFarMs),
    lerp(cfg.lowpassNearHz, cfg.lowpassFarHz),
  ];
}

export function waveformFor(sample: FocusSample, cfg: SonificationConfig = DEFAULT_SOUND): Waveform {
  const driver = cfg.waveformDriver === "height" ? sample.y_norm : sample.x_norm;
  if (driver < 1 / 3) return "sine";
  if (driver < 2 / 3) return "triangle";
  return "square";
}

export function paramsFor(
  sample: FocusSample,
  durS?: number,
  cfg: SonificationConfig = DEFAULT_SOUND,
): AudioParams {
  const [gain, wet, predelay, lowpass] = mapDepth(sample.z_norm, cfg);
  return {
    freq_hz: mapPitch(sample.y_norm, cfg),
    waveform: waveformFor(sample, cfg),
    pan: mapPan(sample.x_norm),
    gain,
    wet,
    predelay_ms: predelay,
    lowpass_hz: lowpass,
    dur_s: durS ?? cfg.dataToneDurS,
  };
}

export function specialCues(
  kind: Extract<AudioRequestKind, "reference" | "peak_positive" | "peak_negative" | "boundary">,
  cfg: SonificationConfig = DEFAULT_SOUND,
): AudioParams {
  if (kind === "reference") {
    return {
      freq_hz: cfg.referenceHz,
      waveform: "sine",
      pan: 0,
      gain: 1,
      wet: cfg.wetNear,
      predelay_ms: cfg.predelayNearMs,
      lowpass_hz: cfg.lowpassNearHz,
      dur_s: cfg.referenceDurS,
    };
  }
  if (kind === "peak_positive" || kind === "peak_negative") {
    const base = kind === "peak_positive" ? cfg.peakPositiveHz : cfg.peakNegativeHz;
    return {
      freq_hz: base,
      waveform: "sine",
      pan: 0,
      gain: 1,
      wet: cfg.wetNear,
      predelay_ms: cfg.predelayNearMs,
      lowpass_hz: cfg.lowpassNearHz,
      dur_s: cfg.peakDurS,
      sweep_to_hz: base * cfg.peakSweepRatio,
    };
  }
  return {
    freq_hz: cfg.boundaryHz,
    waveform: "square",
    pan: 0,
    gain: 0.8,
    wet: 0,
    predelay_ms: cfg.predelayNearMs,
    lowpass_hz: cfg.lowpassNearHz,
    dur_s: cfg.boundaryDurS,
  };
}
