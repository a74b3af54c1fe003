/**
 * The interaction state machine, mirroring the core engine protocol:
 * keys in, event envelopes plus audio requests out. Single-owner, fully
 * deterministic, and conformance-tested against reference transcripts.
 */

import * as sweep from "./autoplay.js";
import {
  cellOf,
  computeStats,
  detectLattice,
  buildGrid,
  latticePosition,
  normalize,
  rectangleAt,
} from "./dataset.js";
import { formatG } from "./format.js";
import * as salience from "./peaks.js";
import * as regions from "./regions.js";
import { DEFAULT_SOUND, SonificationConfig } from "./sonify.js";
import {
  AudioRequest,
  Dataset,
  DatasetStats,
  EventEnvelope,
  FocusSample,
  GridModel,
  LatticeInfo,
  StepResult,
} from "./types.js";

export type Action =
  | "left"
  | "right"
  | "forward"
  | "back"
  | "toggle_mode"
  | "reference"
  | "replay"
  | "jump"
  | "select"
  | "playback"
  | "autoplay"
  | "confirm"
  | "cancel";

export const DEFAULT_KEYBINDINGS: Record<Action, string> = {
  left: "ArrowLeft",
  right: "ArrowRight",
  forward: "ArrowUp",
  back: "ArrowDown",
  toggle_mode: "2",
  reference: "0",
  replay: ".",
  jump: "J",
  select: "D",
  playback: "G",
  autoplay: "A",
  confirm: "Enter",
  cancel: "Escape",
};

export interface EngineConfig {
  gridRows: number;
  gridCols: number;
  selectionFlow: "refined" | "original";
  salience: salience.SalienceConfig;
  sonification: SonificationConfig;
  autoplayIntervalS: number;
  autoplayToneDurS: number;
  autoplayPerspective: sweep.Perspective;
  keybindings: Record<Action, string>;
}

export const DEFAULT_CONFIG: EngineConfig = {
  gridRows: 20,
  gridCols: 20,
  selectionFlow: "refined",
  salience: salience.DEFAULT_SALIENCE,
  sonification: DEFAULT_SOUND,
  autoplayIntervalS: 0.18,
  autoplayToneDurS: 0.15,
  autoplayPerspective: "x_rows",
  keybindings: DEFAULT_KEYBINDINGS,
};

const PAUSING_ACTIONS = new Set<Action>([
  "left", "right", "forward", "back", "toggle_mode", "jump", "select", "playback", "confirm",
]);

const BUSY_SELECTION_TEXT = "Selection in progress. Press Enter to confirm or Escape to cancel.";

const SURFACE_DELTAS: Record<string, [number, number]> = {
  left: [0, -1],
  right: [0, 1],
  forward: [1, 0],
  back: [-1, 0],
};

export interface HighlightState {
  focusHighlight: number | null;
  selectionHighlights: Set<number>;
  cursorStyle: "yellow" | "white";
}

export interface NavCursor {
  mode: "surface" | "point";
  gridPos: [number, number];
  pointIndex: number;
  interaction: "idle" | "selecting" | "jump" | "autoplay";
  savedPos: [number, number] | null;
}

const EMPTY: StepResult = { events: [], audio: [] };

export class Engine {
  readonly config: EngineConfig;
  readonly dataset: Dataset;
  readonly stats: DatasetStats;
  readonly grid: GridModel;
  readonly lattice: LatticeInfo | null;

  cursor: NavCursor;
  selection: regions.SelectionState = regions.INACTIVE_SELECTION;
  buffer: regions.RegionBuffer | null = null;
  peaks: salience.PeakSet | null = null;
  program: sweep.SweepProgram | null = null;
  highlight: HighlightState = { focusHighlight: null, selectionHighlights: new Set(), cursorStyle: "yellow" };

  private keyToAction = new Map<string, Action>();
  private insideRegion = false;
  private lastPerspective: sweep.Perspective | null = null;
  private lastFocus: FocusSample;

  constructor(dataset: Dataset, config: Partial<EngineConfig> = {}) {
    this.config = { ...DEFAULT_CONFIG, ...config };
    this.dataset = dataset;
    this.stats = computeStats(dataset);
    this.grid = buildGrid(dataset, this.config.gridRows, this.config.gridCols);
    this.lattice = detectLattice(dataset);
    for (const [action, key] of Object.entries(this.config.keybindings) as [Action, string][]) {
      this.keyToAction.set(key, action);
      if (key.length === 1 && /[a-z]/i.test(key)) {
        this.keyToAction.set(key.toLowerCase(), action);
        this.keyToAction.set(key.toUpperCase(), action);
      }
    }
    const first = this.grid.rectangles.find((r) => !r.empty);
    if (!first) throw new Error("grid has no occupied cells");
    this.cursor = {
      mode: "surface",
      gridPos: [Math.floor(first.index / this.grid.cols), first.index % this.grid.cols],
      pointIndex: 0,
      interaction: "idle",
      savedPos: null,
    };
    this.lastFocus = this.currentFocus();
    this.refreshHighlight();
  }

  // ---------------------------------------------------------------- helpers

  currentFocus(): FocusSample {
    if (this.cursor.mode === "surface") {
      const [row, col] = this.cursor.gridPos;
      const rect = rectangleAt(this.grid, row, col);
      return this.makeFocus(rect.centerX, rect.avgY, rect.centerZ, "rectangle");
    }
    const p = this.dataset.points[this.cursor.pointIndex];
    return this.makeFocus(p.x, p.y, p.z, "point");
  }

  private makeFocus(x: number, y: number, z: number, kind: "rectangle" | "point"): FocusSample {
    return {
      x, y, z,
      x_norm: normalize(x, "x", this.stats),
      y_norm: normalize(y, "y", this.stats),
      z_norm: normalize(z, "z", this.stats),
      kind,
    };
  }

  private cursorCell(): [number, number] {
    if (this.cursor.mode === "surface") return this.cursor.gridPos;
    const p = this.dataset.points[this.cursor.pointIndex];
    return cellOf(this.grid, p.x, p.z);
  }

  private positionPayload(): Record<string, number> {
    if (this.cursor.mode === "surface") {
      const [row, col] = this.cursor.gridPos;
      return { row, col };
    }
    return { index: this.cursor.pointIndex };
  }

  private focusMoved(): EventEnvelope {
    const focus = this.currentFocus();
    this.lastFocus = focus;
    return {
      name: "focus-moved",
      payload: { focus: { ...focus }, mode: this.cursor.mode, position: this.positionPayload() },
    };
  }

  private boundaryHit(direction: string): EventEnvelope {
    return {
      name: "boundary-hit",
      payload: { direction, mode: this.cursor.mode, position: this.positionPayload() },
    };
  }

  private dataRequest(): AudioRequest {
    return { kind: "data", focus: this.lastFocus };
  }

  private announce(text: string): EventEnvelope {
    return { name: "announce", payload: { text } };
  }

  private refreshHighlight(): void {
    let focusIdx: number;
    if (this.cursor.mode === "surface") {
      const [row, col] = this.cursor.gridPos;
      focusIdx = row * this.grid.cols + col;
    } else {
      focusIdx = this.cursor.pointIndex;
    }
    let bounds: regions.Bounds | null = null;
    if (this.selection.phase === "expanding") {
      bounds = regions.boundsFromCorners(this.selection.anchor!, this.selection.cursorCorner!);
    } else if (this.buffer !== null) {
      bounds = this.buffer.bounds;
    }
    const cells = new Set<number>();
    if (bounds !== null) {
      for (let row = bounds.rowMin; row <= bounds.rowMax; row++) {
        for (let col = bounds.colMin; col <= bounds.colMax; col++) {
          cells.add(row * this.grid.cols + col);
        }
      }
    }
    const style =
      bounds !== null && regions.boundsContain(bounds, this.cursorCell()) ? "white" : "yellow";
    this.highlight = { focusHighlight: focusIdx, selectionHighlights: cells, cursorStyle: style };
  }

  private watchRegion(events: EventEnvelope[]): void {
    const { inside, event } = regions.boundaryWatch(this.buffer, this.cursorCell(), this.insideRegion);
    this.insideRegion = inside;
    if (event !== null) events.push(event);
  }

  private exitJumpInPlace(): void {
    this.cursor = { ...this.cursor, interaction: "idle", savedPos: null };
    this.peaks = null;
  }

  private modeSwitchText(): string {
    if (this.cursor.mode === "point") {
      const p = this.dataset.points[this.cursor.pointIndex];
      return (
        `Point mode. Point ${this.cursor.pointIndex + 1} of ${this.dataset.points.length}. ` +
        `x ${formatG(p.x)}, y ${formatG(p.y)}, z ${formatG(p.z)}.`
      );
    }
    const [row, col] = this.cursor.gridPos;
    return `Surface mode. Row ${row + 1} of ${this.grid.rows}, column ${col + 1} of ${this.grid.cols}.`;
  }

  // ----------------------------------------------------------------- public

  press(keyId: string): StepResult {
    const action = this.keyToAction.get(keyId);
    if (action === undefined) return EMPTY;

    const events: EventEnvelope[] = [];
    const audio: AudioRequest[] = [];

    if (this.program !== null && this.program.state === "playing" && PAUSING_ACTIONS.has(action)) {
      this.program = sweep.pause(this.program);
      this.cursor = { ...this.cursor, interaction: "idle" };
      events.push({
        name: "autoplay-state-changed",
        payload: { state: "paused", perspective: this.program.perspective },
      });
    }

    this.dispatch(action, events, audio);
    this.watchRegion(events);
    this.refreshHighlight();
    return { events, audio };
  }

  tick(): StepResult {
    if (this.program === null || this.program.state !== "playing") return EMPTY;
    const events: EventEnvelope[] = [];
    const audio: AudioRequest[] = [];
    const { program, cell } = sweep.tick(this.program);
    this.program = program;
    if (cell === null) {
      events.push({
        name: "autoplay-state-changed",
        payload: { state: "finished", perspective: this.program.perspective },
      });
      this.cursor = { ...this.cursor, interaction: "idle" };
    } else {
      this.cursor = { ...this.cursor, gridPos: cell };
      events.push(this.focusMoved());
      audio.push(this.dataRequest());
    }
    this.watchRegion(events);
    this.refreshHighlight();
    return { events, audio };
  }

  // ------------------------------------------------------- action dispatch

  private dispatch(action: Action, events: EventEnvelope[], audio: AudioRequest[]): void {
    switch (action) {
      case "reference":
        audio.push({ kind: "reference" });
        return;
      case "replay":
        audio.push({ kind: "replay", focus: this.lastFocus });
        return;
      case "left":
      case "right":
      case "forward":
      case "back":
        this.onArrow(action, events, audio);
        return;
      case "toggle_mode":
        this.onToggleMode(events, audio);
        return;
      case "jump":
        this.onJump(events, audio);
        return;
      case "select":
        this.onSelect(events);
        return;
      case "confirm":
        this.onConfirm(events, audio);
        return;
      case "cancel":
        this.onCancel(events, audio);
        return;
      case "playback":
        this.onPlayback(events, audio);
        return;
      case "autoplay":
        this.onAutoplay(events, audio);
        return;
    }
  }

  private selectionActive(): boolean {
    return this.selection.phase !== "inactive";
  }

  private moveNormally(action: Action, events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.cursor.interaction === "jump") this.exitJumpInPlace();
    if (this.cursor.mode === "surface") {
      const newPos = this.moveSurface(this.cursor.gridPos, action);
      if (newPos === null) {
        events.push(this.boundaryHit(action));
        audio.push({ kind: "boundary" });
        return;
      }
      this.cursor = { ...this.cursor, gridPos: newPos };
    } else {
      const newIndex = this.movePoint(this.cursor.pointIndex, action);
      if (newIndex === null) {
        events.push(this.boundaryHit(action));
        audio.push({ kind: "boundary" });
        return;
      }
      this.cursor = { ...this.cursor, pointIndex: newIndex };
    }
    events.push(this.focusMoved());
    audio.push(this.dataRequest());
  }

  private moveSurface(pos: [number, number], action: Action): [number, number] | null {
    const [dRow, dCol] = SURFACE_DELTAS[action];
    let [row, col] = pos;
    for (;;) {
      row += dRow;
      col += dCol;
      if (row < 0 || row >= this.grid.rows || col < 0 || col >= this.grid.cols) return null;
      if (!rectangleAt(this.grid, row, col).empty) return [row, col];
    }
  }

  private movePoint(index: number, action: Action): number | null {
    const n = this.dataset.points.length;
    if (this.lattice === null) {
      if (action === "forward" || action === "back") return null;
      const next = index + (action === "right" ? 1 : -1);
      return next >= 0 && next < n ? next : null;
    }
    let [zRow, xCol] = latticePosition(this.lattice, index);
    if (action === "left") xCol -= 1;
    else if (action === "right") xCol += 1;
    else if (action === "forward") zRow += 1;
    else zRow -= 1;
    if (xCol < 0 || xCol >= this.lattice.nx || zRow < 0 || zRow >= this.lattice.nz) return null;
    return zRow * this.lattice.zStride + xCol * this.lattice.xStride;
  }

  private onArrow(action: Action, events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selection.phase === "expanding") {
      this.expandSelection(action, events, audio);
      return;
    }
    this.moveNormally(action, events, audio);
    if (this.selection.phase === "anchored") {
      this.selection = { ...this.selection, anchor: this.cursorCell() };
    }
  }

  private expandSelection(action: Action, events: EventEnvelope[], audio: AudioRequest[]): void {
    const [dRow, dCol] = SURFACE_DELTAS[action];
    const corner = this.selection.cursorCorner!;
    const newCorner: [number, number] = [corner[0] + dRow, corner[1] + dCol];
    if (
      newCorner[0] < 0 || newCorner[0] >= this.grid.rows ||
      newCorner[1] < 0 || newCorner[1] >= this.grid.cols
    ) {
      events.push(this.boundaryHit(action));
      audio.push({ kind: "boundary" });
      return;
    }
    this.selection = { ...this.selection, cursorCorner: newCorner };
    if (this.cursor.mode === "surface") {
      this.cursor = { ...this.cursor, gridPos: newCorner };
      if (!rectangleAt(this.grid, newCorner[0], newCorner[1]).empty) {
        events.push(this.focusMoved());
        audio.push(this.dataRequest());
      }
    }
    events.push(this.announce(`Selecting: ${regions.dimensionsText(this.selection)} region.`));
  }

  private onToggleMode(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selectionActive()) {
      events.push(this.announce(BUSY_SELECTION_TEXT));
      return;
    }
    if (this.cursor.interaction === "jump") this.exitJumpInPlace();
    if (this.cursor.mode === "surface") {
      const [row, col] = this.cursor.gridPos;
      const rect = rectangleAt(this.grid, row, col);
      this.cursor = { ...this.cursor, mode: "point", pointIndex: rect.memberIndices[0] };
    } else {
      const p = this.dataset.points[this.cursor.pointIndex];
      this.cursor = { ...this.cursor, mode: "surface", gridPos: cellOf(this.grid, p.x, p.z) };
    }
    events.push({ name: "display-mode-changed", payload: { mode: this.cursor.mode } });
    events.push(this.announce(this.modeSwitchText()));
    events.push(this.focusMoved());
    audio.push(this.dataRequest());
  }

  private jumpToCurrentPeak(events: EventEnvelope[], audio: AudioRequest[], entering: boolean): void {
    const peak = this.peaks!.peaks[this.peaks!.cursor];
    this.cursor = { ...this.cursor, gridPos: salience.peakPosition(peak, this.grid) };
    events.push(this.focusMoved());
    events.push(this.announce(salience.jumpAnnouncement(this.peaks!, entering)));
    audio.push({ kind: peak.sign === "positive" ? "peak_positive" : "peak_negative" });
  }

  private onJump(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selectionActive()) {
      events.push(this.announce(BUSY_SELECTION_TEXT));
      return;
    }
    if (this.cursor.mode === "point") {
      events.push(this.announce("Jump to peak is available in surface mode."));
      return;
    }
    if (this.cursor.interaction === "jump") {
      this.peaks = { ...this.peaks!, cursor: (this.peaks!.cursor + 1) % this.peaks!.peaks.length };
      this.jumpToCurrentPeak(events, audio, false);
      return;
    }
    const peakSet = salience.detectPeaks(this.grid, this.config.salience);
    if (peakSet.peaks.length === 0) {
      events.push(this.announce("No peaks found."));
      return;
    }
    this.peaks = peakSet;
    this.cursor = { ...this.cursor, interaction: "jump", savedPos: this.cursor.gridPos };
    this.jumpToCurrentPeak(events, audio, true);
  }

  private onSelect(events: EventEnvelope[]): void {
    if (this.selectionActive()) {
      events.push(this.announce(BUSY_SELECTION_TEXT));
      return;
    }
    if (this.cursor.interaction === "jump") this.exitJumpInPlace();
    const cell = this.cursorCell();
    if (this.config.selectionFlow === "refined") {
      this.selection = { phase: "expanding", anchor: cell, cursorCorner: cell };
      events.push(this.announce("Selecting: 1 by 1 region."));
    } else {
      this.selection = { phase: "anchored", anchor: cell, cursorCorner: cell };
      events.push(this.announce("Selection mode. Move to the start corner and press Enter to anchor."));
    }
  }

  private snapOffEmptyCell(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.cursor.mode !== "surface") return;
    const [row, col] = this.cursor.gridPos;
    if (!rectangleAt(this.grid, row, col).empty) return;
    let best: [number, number] | null = null;
    let bestKey: [number, number] | null = null;
    for (const rect of this.grid.rectangles) {
      if (rect.empty) continue;
      const r = Math.floor(rect.index / this.grid.cols);
      const c = rect.index % this.grid.cols;
      const key: [number, number] = [(r - row) ** 2 + (c - col) ** 2, rect.index];
      if (bestKey === null || key[0] < bestKey[0] || (key[0] === bestKey[0] && key[1] < bestKey[1])) {
        best = [r, c];
        bestKey = key;
      }
    }
    this.cursor = { ...this.cursor, gridPos: best! };
    events.push(this.focusMoved());
    audio.push(this.dataRequest());
  }

  private onConfirm(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selection.phase === "anchored") {
      const cell = this.cursorCell();
      this.selection = { phase: "expanding", anchor: cell, cursorCorner: cell };
      events.push(this.announce("Selection anchored. Selecting: 1 by 1 region."));
      return;
    }
    if (this.selection.phase === "expanding") {
      const { buffer, events: confirmEvents } = regions.confirmSelection(
        this.selection, this.cursor.mode, this.grid, this.dataset, this.stats,
      );
      this.buffer = buffer;
      events.push(...confirmEvents);
      this.selection = regions.INACTIVE_SELECTION;
      this.snapOffEmptyCell(events, audio);
      this.insideRegion = regions.boundsContain(this.buffer.bounds, this.cursorCell());
    }
  }

  private onCancel(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selectionActive()) {
      this.selection = regions.INACTIVE_SELECTION;
      events.push(this.announce("Selection cancelled."));
      this.snapOffEmptyCell(events, audio);
      return;
    }
    if (this.cursor.interaction === "jump") {
      this.cursor = {
        ...this.cursor,
        gridPos: this.cursor.savedPos!,
        interaction: "idle",
        savedPos: null,
      };
      this.peaks = null;
      events.push(this.focusMoved());
      events.push(this.announce("Jump mode exited. Position restored."));
      audio.push(this.dataRequest());
      return;
    }
    if (this.program !== null && (this.program.state === "playing" || this.program.state === "paused")) {
      this.program = sweep.stop(this.program);
      this.cursor = { ...this.cursor, interaction: "idle" };
      events.push({
        name: "autoplay-state-changed",
        payload: { state: "stopped", perspective: this.program.perspective },
      });
    }
  }

  private onPlayback(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selectionActive()) {
      events.push(this.announce(BUSY_SELECTION_TEXT));
      return;
    }
    if (this.buffer === null) {
      events.push(this.announce("No buffer stored. Press D to select a region."));
      return;
    }
    if (this.buffer.items.length === 0) {
      events.push(this.announce("Buffer region is empty."));
      return;
    }
    const { buffer, plan } = regions.playbackPlan(this.buffer, this.stats, this.config.sonification);
    this.buffer = buffer;
    if (buffer.playbackMode === "sequential") {
      events.push(this.announce(`Sequential playback: ${plan.length} items.`));
    } else {
      events.push(this.announce("Aggregated playback: region mean."));
    }
    audio.push({ kind: "buffer_plan", plan });
  }

  private onAutoplay(events: EventEnvelope[], audio: AudioRequest[]): void {
    if (this.selectionActive()) {
      events.push(this.announce(BUSY_SELECTION_TEXT));
      return;
    }
    if (this.cursor.interaction === "jump") this.exitJumpInPlace();

    if (this.program !== null && this.program.state === "paused") {
      this.program = sweep.resume(this.program);
      this.cursor = { ...this.cursor, interaction: "autoplay" };
      events.push({
        name: "autoplay-state-changed",
        payload: { state: "playing", perspective: this.program.perspective },
      });
      return;
    }

    if (this.cursor.mode === "point") {
      const p = this.dataset.points[this.cursor.pointIndex];
      this.cursor = { ...this.cursor, mode: "surface", gridPos: cellOf(this.grid, p.x, p.z) };
      events.push({ name: "display-mode-changed", payload: { mode: "surface" } });
      events.push(this.announce(this.modeSwitchText()));
      events.push(this.focusMoved());
      audio.push(this.dataRequest());
    }

    const perspective = sweep.nextPerspective(this.lastPerspective, this.config.autoplayPerspective);
    this.lastPerspective = perspective;
    this.program = sweep.buildSweep(this.grid, perspective, this.config.autoplayIntervalS);
    this.cursor = { ...this.cursor, interaction: "autoplay" };
    events.push({ name: "autoplay-state-changed", payload: { state: "playing", perspective } });
  }
}
