/** Sweep programs: precomputed visiting orders over occupied cells. */

import { EngineError, GridModel } from "./types.js";

export type Perspective = "x_rows" | "z_columns" | "boustrophedon";
export const PERSPECTIVES: Perspective[] = ["x_rows", "z_columns", "boustrophedon"];

export type SweepState = "idle" | "playing" | "paused";

export interface SweepProgram {
  perspective: Perspective;
  commands: Array<[number, number]>;
  intervalS: number;
  state: SweepState;
  nextIndex: number;
}

export class EmptyGridError extends EngineError {}

export function buildSweep(
  grid: GridModel,
  perspective: Perspective,
  intervalS = 0.18,
): SweepProgram {
  const occupied: Array<[number, number]> = grid.rectangles
    .filter((r) => !r.empty)
    .map((r) => [Math.floor(r.index / grid.cols), r.index % grid.cols]);
  if (occupied.length === 0) throw new EmptyGridError("no occupied cells to sweep");

  let commands: Array<[number, number]>;
  if (perspective === "x_rows") {
    commands = occupied.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  } else if (perspective === "z_columns") {
    commands = occupied.sort((a, b) => a[1] - b[1] || a[0] - b[0]);
  } else {
    commands = occupied.sort((a, b) => {
      if (a[0] !== b[0]) return a[0] - b[0];
      const ka = a[0] % 2 === 0 ? a[1] : -a[1];
      const kb = b[0] % 2 === 0 ? b[1] : -b[1];
      return ka - kb;
    });
  }
  return { perspective, commands, intervalS, state: "playing", nextIndex: 0 };
}

export function tick(program: SweepProgram): { program: SweepProgram; cell: [number, number] | null } {
  if (program.state !== "playing") return { program, cell: null };
  if (program.nextIndex >= program.commands.length) {
    return { program: { ...program, state: "idle" }, cell: null };
  }
  const cell = program.commands[program.nextIndex];
  return { program: { ...program, nextIndex: program.nextIndex + 1 }, cell };
}

export function pause(program: SweepProgram): SweepProgram {
  return program.state === "playing" ? { ...program, state: "paused" } : program;
}

export function resume(program: SweepProgram): SweepProgram {
  return program.state === "paused" ? { ...program, state: "playing" } : program;
}

export function stop(program: SweepProgram): SweepProgram {
  return { ...program, state: "idle" };
}

export function nextPerspective(
  current: Perspective | null,
  defaultPerspective: Perspective = "x_rows",
): Perspective {
  if (current === null) return defaultPerspective;
  return PERSPECTIVES[(PERSPECTIVES.indexOf(current) + 1) % PERSPECTIVES.length];
}
