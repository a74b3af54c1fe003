/**
 * Scripted replay over the engine: reproduces the reference transcript
 * schedule (frame-quantized key times, autoplay ticks between keys) so
 * transcripts can be compared record for record.
 */

import { Engine } from "./engine.js";
import { AudioRequest, Dataset, EventEnvelope } from "./types.js";

export const SAMPLE_RATE = 48_000;

export interface ScriptKey {
  key: string;
  at: number;
}

export interface SessionScript {
  dataset: string;
  seed: number;
  keys: ScriptKey[];
}

export interface TranscriptRecord {
  seq: number;
  t_s: number;
  name: string;
  payload: Record<string, unknown>;
}

export interface ScheduledAudio {
  atFrame: number;
  request: AudioRequest;
  fromTick: boolean;
}

export function replayScript(
  script: SessionScript,
  dataset: Dataset,
): { records: TranscriptRecord[]; audio: ScheduledAudio[] } {
  const engine = new Engine(dataset);
  const records: TranscriptRecord[] = [];
  const audio: ScheduledAudio[] = [];
  const intervalFrames = Math.max(1, Math.round(engine.config.autoplayIntervalS * SAMPLE_RATE));
  let nextTickFrame: number | null = null;

  const record = (events: EventEnvelope[], requests: AudioRequest[], frame: number, fromTick: boolean) => {
    const t = frame / SAMPLE_RATE;
    for (const event of events) {
      records.push({ seq: records.length, t_s: t, name: event.name, payload: event.payload });
    }
    for (const request of requests) {
      audio.push({ atFrame: frame, request, fromTick });
    }
  };

  const playing = () => engine.program !== null && engine.program.state === "playing";

  const runTicksUntil = (limitFrame: number | null) => {
    while (playing() && nextTickFrame !== null) {
      if (limitFrame !== null && nextTickFrame >= limitFrame) return;
      const frame = nextTickFrame;
      const result = engine.tick();
      record(result.events, result.audio, frame, true);
      nextTickFrame = frame + intervalFrames;
    }
    nextTickFrame = null;
  };

  for (const item of script.keys) {
    const frame = Math.round(item.at * SAMPLE_RATE);
    runTicksUntil(frame);
    const wasPlaying = playing();
    const result = engine.press(item.key);
    record(result.events, result.audio, frame, false);
    if (playing() && (!wasPlaying || nextTickFrame === null)) {
      nextTickFrame = frame + intervalFrames;
    } else if (!playing()) {
      nextTickFrame = null;
    }
  }
  runTicksUntil(null);
  return { records, audio };
}
