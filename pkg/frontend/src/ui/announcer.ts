/**
 * Screen-reader announcements via an aria-live region, with an optional
 * speech-synthesis mirror. Every engine announce event lands here verbatim.
 */

import { Announcer } from "./backends.js";

export class LiveRegionAnnouncer implements Announcer {
  ttsEnabled = false;
  private readonly region: HTMLElement;
  private readonly log: HTMLElement | null;

  constructor(region: HTMLElement, log: HTMLElement | null = null) {
    this.region = region;
    this.region.setAttribute("aria-live", "polite");
    this.region.setAttribute("aria-atomic", "true");
    this.log = log;
  }

  announce(text: string): void {
    // Clearing first makes repeated identical announcements re-read.
    this.region.textContent = "";
    requestAnimationFrame(() => {
      this.region.textContent = text;
    });
    if (this.log) {
      const line = document.createElement("div");
      line.textContent = text;
      this.log.prepend(line);
      while (this.log.childElementCount > 8) this.log.lastElementChild?.remove();
    }
    if (this.ttsEnabled && "speechSynthesis" in window) {
      window.speechSynthesis.cancel();
      window.speechSynthesis.speak(new SpeechSynthesisUtterance(text));
    }
  }
}
