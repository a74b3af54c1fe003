"""Automatic sweeps that play the whole surface as an auditory overview.

A sweep program is a precomputed visiting order over the occupied grid
cells; ticking it advances one cell per call. The program holds no timer:
whoever owns the clock (the scripted session runner or a live UI) calls
tick at its chosen cadence, so playback speed is a host concern and the
program stays deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dataset import GridModel
from .errors import EmptyGridError

X_ROWS = "x_rows"
Z_COLUMNS = "z_columns"
BOUSTROPHEDON = "boustrophedon"
PERSPECTIVES = (X_ROWS, Z_COLUMNS, BOUSTROPHEDON)

IDLE = "idle"
PLAYING = "playing"
PAUSED = "paused"


@dataclass(frozen=True)
class SweepProgram:
    perspective: str
    commands: tuple[tuple[int, int], ...]
    interval_s: float = 0.18
    state: str = IDLE
    next_index: int = 0

    @property
    def finished(self) -> bool:
        return self.next_index >= len(self.commands)


def build_sweep(grid: GridModel, perspective: str, interval_s: float = 0.18) -> SweepProgram:
    """Visit every occupied cell once, ordered by the chosen perspective.

    x_rows walks each Z row front-to-back, left-to-right; z_columns walks
    each X column left-to-right, front-to-back; boustrophedon is x_rows
    with every odd row reversed.
    """
    if perspective not in PERSPECTIVES:
        raise ValueError(f"unknown perspective {perspective!r}")
    occupied = [
        (idx // grid.cols, idx % grid.cols)
        for idx, rect in enumerate(grid.rectangles)
        if not rect.empty
    ]
    if not occupied:
        raise EmptyGridError("no occupied cells to sweep")

    if perspective == X_ROWS:
        commands = sorted(occupied, key=lambda rc: (rc[0], rc[1]))
    elif perspective == Z_COLUMNS:
        commands = sorted(occupied, key=lambda rc: (rc[1], rc[0]))
    else:
        commands = sorted(
            occupied, key=lambda rc: (rc[0], rc[1] if rc[0] % 2 == 0 else -rc[1])
        )
    return SweepProgram(perspective, tuple(commands), interval_s=interval_s, state=PLAYING)


def tick(program: SweepProgram) -> tuple[SweepProgram, tuple[int, int] | None]:
    """Advance one command; returns the cell to visit, or None when done.

    Ticking a non-playing program is a no-op; ticking past the last
    command flips the program to idle so the host can emit its finish
    event exactly once.
    """
    if program.state != PLAYING:
        return program, None
    if program.finished:
        return replace(program, state=IDLE), None
    cell = program.commands[program.next_index]
    return replace(program, next_index=program.next_index + 1), cell


def pause(program: SweepProgram) -> SweepProgram:
    if program.state != PLAYING:
        return program
    return replace(program, state=PAUSED)


def resume(program: SweepProgram) -> SweepProgram:
    if program.state != PAUSED:
        return program
    return replace(program, state=PLAYING)


def stop(program: SweepProgram) -> SweepProgram:
    return replace(program, state=IDLE)


def next_perspective(current: str | None, default: str = X_ROWS) -> str:
    if current is None:
        if default not in PERSPECTIVES:
            raise ValueError(f"unknown perspective {default!r}")
        return default
    return PERSPECTIVES[(PERSPECTIVES.index(current) + 1) % len(PERSPECTIVES)]
