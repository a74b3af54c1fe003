/**
 * App controller: one engine instance, optional audio / view / speech
 * backends, and the keyboard as the only command channel into the engine.
 * Events flow one way out of the engine; the controller mirrors them to
 * whichever backends exist.
 */

import { Engine, EngineConfig } from "../engine/engine.js";
import { paramsFor, specialCues } from "../engine/sonify.js";
import { AudioRequest, Dataset, EventEnvelope, PlanEntry, StepResult } from "../engine/types.js";
import { Announcer, AudioPlayer, ViewBackend } from "./backends.js";

export interface AppBackends {
  announcer: Announcer | null;
  audio: AudioPlayer | null;
  view: ViewBackend | null;
}

export class App {
  engine: Engine;
  readonly backends: AppBackends;
  private autoplayTimer: ReturnType<typeof setInterval> | null = null;
  private eventLog: EventEnvelope[] = [];

  constructor(dataset: Dataset, backends: Partial<AppBackends> = {}, config: Partial<EngineConfig> = {}) {
    this.engine = new Engine(dataset, config);
    this.backends = { announcer: null, audio: null, view: null, ...backends };
    this.backends.view?.render();
  }

  loadDataset(dataset: Dataset): void {
    this.stopAutoplayTimer();
    this.engine = new Engine(dataset, this.engine.config);
    this.backends.announcer?.announce(
      `Loaded ${dataset.sourceName || "dataset"}: ${dataset.points.length} points.`,
    );
    this.backends.view?.render();
  }

  /** Feed one key id through the engine and fan results out to backends. */
  handleKey(keyId: string): StepResult {
    const result = this.engine.press(keyId);
    this.applyResult(result);
    this.syncAutoplayTimer();
    return result;
  }

  get events(): readonly EventEnvelope[] {
    return this.eventLog;
  }

  private applyResult(result: StepResult): void {
    for (const event of result.events) {
      this.eventLog.push(event);
      if (event.name === "announce") {
        this.backends.announcer?.announce(String(event.payload.text));
      }
    }
    for (const request of result.audio) {
      this.playRequest(request);
    }
    if (result.events.length > 0) this.backends.view?.render();
  }

  private playRequest(request: AudioRequest, tickTone = false): void {
    const audio = this.backends.audio;
    if (audio === null) return;
    const sound = this.engine.config.sonification;
    switch (request.kind) {
      case "data":
      case "replay": {
        const dur = tickTone ? this.engine.config.autoplayToneDurS : sound.dataToneDurS;
        audio.playParams(paramsFor(request.focus!, dur, sound));
        return;
      }
      case "reference":
      case "peak_positive":
      case "peak_negative":
      case "boundary":
        audio.playParams(specialCues(request.kind, sound));
        return;
      case "buffer_plan":
        audio.playPlan(request.plan!, (entry: PlanEntry) => paramsFor(entry.focus, entry.dur_s, sound));
        return;
    }
  }

  // Autoplay cadence is owned here: the engine holds no timer.
  private syncAutoplayTimer(): void {
    const playing = this.engine.program !== null && this.engine.program.state === "playing";
    if (playing && this.autoplayTimer === null) {
      this.autoplayTimer = setInterval(() => {
        const result = this.engine.tick();
        for (const event of result.events) {
          this.eventLog.push(event);
          if (event.name === "announce") {
            this.backends.announcer?.announce(String(event.payload.text));
          }
        }
        for (const request of result.audio) this.playRequest(request, true);
        if (result.events.length > 0) this.backends.view?.render();
        if (this.engine.program === null || this.engine.program.state !== "playing") {
          this.stopAutoplayTimer();
        }
      }, this.engine.config.autoplayIntervalS * 1000);
    } else if (!playing) {
      this.stopAutoplayTimer();
    }
  }

  stopAutoplayTimer(): void {
    if (this.autoplayTimer !== null) {
      clearInterval(this.autoplayTimer);
      this.autoplayTimer = null;
    }
  }

  /**
   * Latency self-test: dispatch n keypresses and measure key-to-scheduled
   * time. Returns the median milliseconds.
   */
  measureLatency(n = 100): number {
    const samples: number[] = [];
    const keys = ["ArrowRight", "ArrowLeft", "ArrowUp", "ArrowDown", "."];
    for (let i = 0; i < n; i++) {
      const start = performance.now();
      this.handleKey(keys[i % keys.length]);
      samples.push(performance.now() - start);
    }
    samples.sort((a, b) => a - b);
    const mid = Math.floor(samples.length / 2);
    return samples.length % 2 === 1 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
  }
}
