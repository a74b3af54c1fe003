/**
 * Canvas projection of the surface: wireframe cells colored by height in
 * surface mode, raw points in point mode. The focus highlight draws last,
 * magenta at four times the base weight, so it stays on top regardless of
 * depth order; selection cells render white; the cursor marker is yellow,
 * or white while inside a selection.
 */

import { Engine } from "../engine/engine.js";
import { normalize, rectangleAt } from "../engine/dataset.js";
import { ViewBackend } from "./backends.js";

const FOCUS_COLOR = "#ff00ff";
const FOCUS_WEIGHT = 4;
const SELECTION_COLOR = "#ffffff";

export interface Camera {
  yawDeg: number;
  pitchDeg: number;
  zoom: number;
}

export class CanvasView implements ViewBackend {
  camera: Camera = { yawDeg: -35, pitchDeg: 28, zoom: 1 };
  private readonly canvas: HTMLCanvasElement;
  private readonly getEngine: () => Engine;

  constructor(canvas: HTMLCanvasElement, getEngine: () => Engine) {
    this.canvas = canvas;
    this.getEngine = getEngine;
    let dragging = false;
    let last: [number, number] = [0, 0];
    canvas.addEventListener("pointerdown", (e) => {
      dragging = true;
      last = [e.clientX, e.clientY];
    });
    window.addEventListener("pointerup", () => (dragging = false));
    window.addEventListener("pointermove", (e) => {
      if (!dragging) return;
      this.camera.yawDeg += (e.clientX - last[0]) * 0.4;
      this.camera.pitchDeg = Math.max(5, Math.min(80, this.camera.pitchDeg + (e.clientY - last[1]) * 0.3));
      last = [e.clientX, e.clientY];
      this.render();
    });
    canvas.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.camera.zoom = Math.max(0.4, Math.min(3, this.camera.zoom * (e.deltaY < 0 ? 1.1 : 0.9)));
      this.render();
    });
  }

  private project(xn: number, yn: number, zn: number): [number, number] {
    const yaw = (this.camera.yawDeg * Math.PI) / 180;
    const pitch = (this.camera.pitchDeg * Math.PI) / 180;
    const cx = xn - 0.5;
    const cz = zn - 0.5;
    const rx = cx * Math.cos(yaw) - cz * Math.sin(yaw);
    const rz = cx * Math.sin(yaw) + cz * Math.cos(yaw);
    const w = this.canvas.width;
    const h = this.canvas.height;
    const scale = Math.min(w, h) * 0.62 * this.camera.zoom;
    const sx = w / 2 + rx * scale;
    const sy = h / 2 + rz * Math.sin(pitch) * scale - (yn - 0.35) * Math.cos(pitch) * scale * 0.8;
    return [sx, sy];
  }

  private heightColor(t: number): string {
    // blue -> green -> yellow -> red
    const stops: Array<[number, [number, number, number]]> = [
      [0.0, [40, 70, 220]],
      [0.4, [40, 190, 120]],
      [0.7, [235, 220, 60]],
      [1.0, [230, 60, 50]],
    ];
    let lo = stops[0];
    let hi = stops[stops.length - 1];
    for (let i = 0; i + 1 < stops.length; i++) {
      if (t >= stops[i][0] && t <= stops[i + 1][0]) {
        lo = stops[i];
        hi = stops[i + 1];
        break;
      }
    }
    const f = hi[0] === lo[0] ? 0 : (t - lo[0]) / (hi[0] - lo[0]);
    const rgb = lo[1].map((c, i) => Math.round(c + (hi[1][i] - c) * f));
    return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const engine = this.getEngine();
    ctx.fillStyle = "#000";
    ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);

    if (engine.cursor.mode === "surface") {
      this.renderSurface(ctx, engine);
    } else {
      this.renderPoints(ctx, engine);
    }
  }

  private cellCorners(engine: Engine, row: number, col: number, yn: number): Array<[number, number]> {
    const grid = engine.grid;
    const x0 = col / grid.cols;
    const x1 = (col + 1) / grid.cols;
    const z0 = row / grid.rows;
    const z1 = (row + 1) / grid.rows;
    return [
      this.project(x0, yn, z0),
      this.project(x1, yn, z0),
      this.project(x1, yn, z1),
      this.project(x0, yn, z1),
    ];
  }

  private tracePolygon(ctx: CanvasRenderingContext2D, pts: Array<[number, number]>): void {
    ctx.beginPath();
    ctx.moveTo(pts[0][0], pts[0][1]);
    for (const [x, y] of pts.slice(1)) ctx.lineTo(x, y);
    ctx.closePath();
  }

  private renderSurface(ctx: CanvasRenderingContext2D, engine: Engine): void {
    const grid = engine.grid;
    const highlight = engine.highlight;
    // Back-to-front so nearer rows paint over farther ones.
    for (let row = grid.rows - 1; row >= 0; row--) {
      for (let col = 0; col < grid.cols; col++) {
        const rect = rectangleAt(grid, row, col);
        if (rect.empty) continue;
        const yn = normalize(rect.avgY, "y", engine.stats);
        const pts = this.cellCorners(engine, row, col, yn);
        this.tracePolygon(ctx, pts);
        ctx.fillStyle = this.heightColor(yn);
        ctx.globalAlpha = 0.75;
        ctx.fill();
        ctx.globalAlpha = 1;
        const idx = row * grid.cols + col;
        if (highlight.selectionHighlights.has(idx)) {
          ctx.strokeStyle = SELECTION_COLOR;
          ctx.lineWidth = 2;
        } else {
          ctx.strokeStyle = "#334";
          ctx.lineWidth = 1;
        }
        ctx.stroke();
      }
    }
    if (highlight.focusHighlight !== null) {
      const rect = grid.rectangles[highlight.focusHighlight];
      const yn = rect.empty ? 0 : normalize(rect.avgY, "y", engine.stats);
      const row = Math.floor(rect.index / grid.cols);
      const col = rect.index % grid.cols;
      this.tracePolygon(ctx, this.cellCorners(engine, row, col, yn));
      ctx.strokeStyle = FOCUS_COLOR;
      ctx.lineWidth = FOCUS_WEIGHT;
      ctx.stroke();
      const [cx, cy] = this.project((col + 0.5) / grid.cols, yn, (row + 0.5) / grid.rows);
      ctx.fillStyle = highlight.cursorStyle === "white" ? "#fff" : "#ffdf20";
      ctx.beginPath();
      ctx.arc(cx, cy, 4, 0, Math.PI * 2);
      ctx.fill();
    }
  }

  private renderPoints(ctx: CanvasRenderingContext2D, engine: Engine): void {
    const stats = engine.stats;
    engine.dataset.points.forEach((p, i) => {
      const xn = normalize(p.x, "x", stats);
      const yn = normalize(p.y, "y", stats);
      const zn = normalize(p.z, "z", stats);
      const [sx, sy] = this.project(xn, yn, zn);
      const focused = engine.highlight.focusHighlight === i;
      ctx.fillStyle = focused ? FOCUS_COLOR : this.heightColor(yn);
      ctx.beginPath();
      ctx.arc(sx, sy, focused ? 6 : 1.5, 0, Math.PI * 2);
      ctx.fill();
    });
  }
}
