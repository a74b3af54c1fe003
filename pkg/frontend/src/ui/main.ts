/** DOM bootstrap: wire the engine app to the page. */

import { parseDataset, generateSynthetic } from "../engine/dataset.js";
import { exportBuffer } from "../engine/regions.js";
import { Dataset } from "../engine/types.js";
import { App } from "./app.js";
import { LiveRegionAnnouncer } from "./announcer.js";
import { WebAudioPlayer } from "./audio.js";
import { onKey } from "./keymap.js";
import { renderSelectionPanel, renderStatsPanel } from "./panels.js";
import { CanvasView } from "./view.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function boot(): void {
  const announcer = new LiveRegionAnnouncer(byId("live-region"), byId("announce-log"));

  let audio: WebAudioPlayer | null = null;
  try {
    audio = new WebAudioPlayer();
  } catch {
    announcer.announce("Audio unavailable. Announcements remain active.");
  }

  const canvas = byId<HTMLCanvasElement>("surface-canvas");
  const app = new App(generateSynthetic("gaussian"), { announcer, audio, view: null });
  let view: CanvasView | null = null;
  try {
    view = new CanvasView(canvas, () => app.engine);
    app.backends.view = {
      render: () => {
        view!.render();
        renderStatsPanel(app.engine, byId("stats-panel"));
        renderSelectionPanel(app.engine, byId("selection-panel"));
      },
    };
    app.backends.view.render();
  } catch {
    announcer.announce("Graphics unavailable. Audio and announcements remain active.");
  }

  const surface = byId("surface-region");
  surface.addEventListener("keydown", (event) => {
    const keyId = onKey(event as KeyboardEvent);
    if (keyId === null) return;
    void audio?.resume();
    app.handleKey(keyId);
  });

  const load = (dataset: Dataset) => {
    app.loadDataset(dataset);
    surface.focus();
  };
  byId("load-gaussian").addEventListener("click", () => load(generateSynthetic("gaussian")));
  byId("load-sinusoidal").addEventListener("click", () => load(generateSynthetic("sinusoidal")));
  byId("load-benzene").addEventListener("click", () => load(generateSynthetic("benzene_like")));

  byId<HTMLInputElement>("load-file").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      load(parseDataset(await file.text(), file.name));
    } catch (err) {
      announcer.announce(`Could not load ${file.name}: ${err instanceof Error ? err.message : err}`);
    }
  });

  const ttsToggle = byId<HTMLInputElement>("tts-toggle");
  ttsToggle.addEventListener("change", () => {
    announcer.ttsEnabled = ttsToggle.checked;
    announcer.announce(ttsToggle.checked ? "Speech output on." : "Speech output off.");
  });

  byId("export-buffer").addEventListener("click", () => {
    if (app.engine.buffer === null) {
      announcer.announce("No buffer stored. Press D to select a region.");
      return;
    }
    const blob = new Blob([JSON.stringify(exportBuffer(app.engine.buffer), null, 1)], {
      type: "application/json",
    });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "buffer.json";
    a.click();
    URL.revokeObjectURL(a.href);
    announcer.announce("Buffer exported.");
  });

  byId("latency-test").addEventListener("click", () => {
    const median = app.measureLatency(100);
    byId("latency-result").textContent = `Median keystroke-to-schedule latency: ${median.toFixed(2)} ms over 100 presses.`;
    announcer.announce(`Latency test done: median ${median.toFixed(2)} milliseconds.`);
  });

  if (new URLSearchParams(window.location.search).get("selftest") === "latency") {
    setTimeout(() => byId("latency-test").click(), 500);
  }
}

document.addEventListener("DOMContentLoaded", boot);
