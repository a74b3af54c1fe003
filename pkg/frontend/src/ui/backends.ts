/**
 * Backend interfaces the app controller drives. Each modality is optional:
 * a missing backend degrades that channel only, never the engine. This is
 * what keeps the tool usable with audio off (announcements carry the
 * information) or graphics off (audio and announcements carry it).
 */

import { AudioParams, PlanEntry } from "../engine/types.js";

export interface Announcer {
  announce(text: string): void;
}

export interface AudioPlayer {
  /** Schedule one tone now (or at an offset in seconds from now). */
  playParams(params: AudioParams, offsetS?: number): void;
  playPlan(plan: PlanEntry[], toParams: (entry: PlanEntry) => AudioParams): void;
}

export interface ViewBackend {
  render(): void;
}
