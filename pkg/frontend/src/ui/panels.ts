/** Stats sidebar and selection status panel, mirroring engine state. */

import { Engine } from "../engine/engine.js";
import { formatG } from "../engine/format.js";

export function renderStatsPanel(engine: Engine, element: HTMLElement): void {
  const stats = engine.stats;
  const meta = engine.dataset.axisMeta;
  const axes: Array<["x" | "y" | "z", number]> = [["x", 0], ["y", 1], ["z", 2]];
  const blocks = axes.map(([axis, i]) => {
    const a = stats[axis];
    const label = meta[i].unit ? `${meta[i].label} (${meta[i].unit})` : meta[i].label;
    return `<h3>${label}</h3>
      <dl>
        <dt>range</dt><dd>${formatG(a.min)} to ${formatG(a.max)}</dd>
        <dt>mean</dt><dd>${formatG(a.mean)}</dd>
        <dt>median</dt><dd>${formatG(a.median)}</dd>
        <dt>std</dt><dd>${formatG(a.std)}</dd>
        <dt>mode</dt><dd>${formatG(a.mode)}</dd>
      </dl>`;
  });
  element.innerHTML = `${blocks.join("")}
    <p class="summary">${stats.count} data points. Intensity skewness ${formatG(stats.ySkewness)}.</p>`;
}

export function renderSelectionPanel(engine: Engine, element: HTMLElement): void {
  const sel = engine.selection;
  const cursor = engine.cursor;
  const position =
    cursor.mode === "surface"
      ? `Row ${cursor.gridPos[0] + 1}, column ${cursor.gridPos[1] + 1}`
      : `Point ${cursor.pointIndex + 1} of ${engine.dataset.points.length}`;

  let status: string;
  if (sel.phase === "expanding") {
    const [ar, ac] = sel.anchor!;
    const [cr, cc] = sel.cursorCorner!;
    status = `Drag Select Mode - Selecting. Start (row ${ar + 1}, col ${ac + 1}), ` +
      `current (row ${cr + 1}, col ${cc + 1}). Arrows resize, Enter confirms, Escape cancels.`;
  } else if (sel.phase === "anchored") {
    status = "Drag Select Mode - armed. Move to the start corner, Enter anchors.";
  } else if (engine.buffer !== null) {
    const b = engine.buffer.bounds;
    status = `Buffer stored: rows ${b.rowMin + 1}-${b.rowMax + 1}, cols ${b.colMin + 1}-${b.colMax + 1} ` +
      `(${engine.buffer.items.length} items, ${engine.buffer.playbackMode}). G plays it.`;
  } else {
    status = "No selection. D starts one.";
  }
  element.innerHTML = `<p>${cursor.mode} mode. ${position}.</p><p>${status}</p>`;
}
