/**
 * Keystroke-to-schedule latency. The in-browser harness (Latency Self-Test
 * button, or ?selftest=latency) measures the same path against the real
 * AudioContext clock; this test runs it against a stub player, which
 * covers everything except the audio hardware hop.
 */

import assert from "node:assert/strict";
import { test } from "node:test";

import { parseDataset } from "../src/engine/dataset.js";
import { AudioParams, PlanEntry } from "../src/engine/types.js";
import { App } from "../src/ui/app.js";
import { AudioPlayer } from "../src/ui/backends.js";
import { readFixture } from "./fixtures.js";

class SchedulingStub implements AudioPlayer {
  scheduled = 0;
  playParams(_params: AudioParams): void {
    this.scheduled += 1;
  }
  playPlan(plan: PlanEntry[], toParams: (entry: PlanEntry) => AudioParams): void {
    for (const entry of plan) {
      toParams(entry);
      this.scheduled += 1;
    }
  }
}

test("median keystroke-to-schedule latency stays at or below 30 ms", () => {
  const audio = new SchedulingStub();
  const app = new App(parseDataset(readFixture("gaussian.csv")), { audio });
  const median = app.measureLatency(100);
  app.stopAutoplayTimer();
  assert.ok(audio.scheduled >= 100, `only ${audio.scheduled} tones scheduled`);
  assert.ok(median <= 30, `median ${median.toFixed(3)} ms exceeds 30 ms`);
});
