"""Rectangular region selection, buffering, and playback planning.

A confirmed selection snapshots the focus samples inside its bounds into a
RegionBuffer. The buffer stores values, not references, so reloading data
never mutates a saved region. It persists until the next confirmed
selection; repeated playback presses alternate between sequential item
playback and a single aggregated mean tone.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .config import SonificationConfig
from .dataset import DatasetStats, GridModel, SurfaceDataset
from .errors import ConfirmWithoutAnchorError, EmptyBufferError, NoBufferStoredError
from .events import ANNOUNCE, EventEnvelope
from .navigation import FocusSample, focus_sample

SEQUENTIAL = "sequential"
AGGREGATED = "aggregated"

INACTIVE = "inactive"
ANCHORED = "anchored"   # selection armed, anchor travels with the cursor
EXPANDING = "expanding"  # anchor fixed, opposite corner moving


@dataclass(frozen=True)
class Bounds:
    """Inclusive cell bounds: rows follow Z, columns follow X."""

    row_min: int
    row_max: int
    col_min: int
    col_max: int

    def __post_init__(self) -> None:
        if self.row_min > self.row_max or self.col_min > self.col_max:
            raise ValueError("degenerate bounds")

    @classmethod
    def from_corners(cls, a: tuple[int, int], b: tuple[int, int]) -> "Bounds":
        return cls(
            row_min=min(a[0], b[0]),
            row_max=max(a[0], b[0]),
            col_min=min(a[1], b[1]),
            col_max=max(a[1], b[1]),
        )

    @property
    def n_rows(self) -> int:
        return self.row_max - self.row_min + 1

    @property
    def n_cols(self) -> int:
        return self.col_max - self.col_min + 1

    def contains(self, cell: tuple[int, int]) -> bool:
        row, col = cell
        return self.row_min <= row <= self.row_max and self.col_min <= col <= self.col_max


@dataclass(frozen=True)
class SelectionState:
    phase: str = INACTIVE
    anchor: Optional[tuple[int, int]] = None
    cursor_corner: Optional[tuple[int, int]] = None

    def __post_init__(self) -> None:
        if self.phase != INACTIVE and self.anchor is None:
            raise ValueError("anchor required outside the inactive phase")

    def bounds(self) -> Bounds:
        assert self.anchor is not None and self.cursor_corner is not None
        return Bounds.from_corners(self.anchor, self.cursor_corner)

    def dimensions_text(self) -> str:
        b = self.bounds()
        return f"{b.n_rows} by {b.n_cols}"


@dataclass(frozen=True)
class RegionBuffer:
    bounds: Bounds
    items: tuple[FocusSample, ...]
    playback_mode: str = SEQUENTIAL
    g_press_parity: int = 0


@dataclass(frozen=True)
class PlanEntry:
    focus: FocusSample
    start_s: float
    dur_s: float
    aggregated: bool = False


PlaybackPlan = tuple[PlanEntry, ...]


def collect_items(
    bounds: Bounds,
    mode: str,
    grid: GridModel,
    dataset: SurfaceDataset,
    stats: DatasetStats,
) -> tuple[FocusSample, ...]:
    """Snapshot everything inside the bounds, ordered (z, x, index).

    Surface mode captures occupied cells as rectangle samples; point mode
    captures the raw points whose cell falls inside the bounds.
    """
    samples: list[tuple[tuple, FocusSample]] = []
    if mode == "surface":
        for row in range(bounds.row_min, bounds.row_max + 1):
            for col in range(bounds.col_min, bounds.col_max + 1):
                rect = grid.rectangle_at(row, col)
                if rect.empty:
                    continue
                s = focus_sample(rect.center_x, rect.avg_y, rect.center_z, "rectangle", stats)
                samples.append(((s.z, s.x, rect.index), s))
    else:
        for i, (x, y, z) in enumerate(dataset.points):
            if bounds.contains(grid.cell_of(x, z)):
                samples.append(((z, x, i), focus_sample(x, y, z, "point", stats)))
    samples.sort(key=lambda pair: pair[0])
    return tuple(s for _key, s in samples)


def confirm_selection(
    sel: SelectionState,
    mode: str,
    grid: GridModel,
    dataset: SurfaceDataset,
    stats: DatasetStats,
) -> tuple[RegionBuffer, list[EventEnvelope]]:
    """Store the selected region and emit confirmation events."""
    if sel.phase != EXPANDING:
        raise ConfirmWithoutAnchorError("no anchored selection to confirm")
    bounds = sel.bounds()
    items = collect_items(bounds, mode, grid, dataset, stats)
    buffer = RegionBuffer(bounds=bounds, items=items)
    events = [
        EventEnvelope(
            "drag-select-selection-confirmed",
            {
                "bounds": {
                    "row_min": bounds.row_min,
                    "row_max": bounds.row_max,
                    "col_min": bounds.col_min,
                    "col_max": bounds.col_max,
                },
                "item_count": len(items),
            },
        ),
        EventEnvelope(
            ANNOUNCE,
            {"text": f"Buffer saved: {bounds.n_rows} by {bounds.n_cols} region"},
        ),
    ]
    return buffer, events


def aggregate_mean(buffer: RegionBuffer) -> float:
    """Arithmetic mean of item heights (cell means or raw point heights)."""
    if not buffer.items:
        raise EmptyBufferError("buffer holds no items")
    return sum(item.y for item in buffer.items) / len(buffer.items)


def sequence_order(buffer: RegionBuffer) -> tuple[FocusSample, ...]:
    """Items ordered front-to-back by Z, left-to-right by X, stably."""
    if not buffer.items:
        raise EmptyBufferError("buffer holds no items")
    indexed = list(enumerate(buffer.items))
    indexed.sort(key=lambda pair: (pair[1].z, pair[1].x, pair[0]))
    return tuple(item for _i, item in indexed)


def aggregate_focus(buffer: RegionBuffer, stats: DatasetStats) -> FocusSample:
    """One sample standing for the whole region: centroid position, mean height."""
    mean_y = aggregate_mean(buffer)
    cx = sum(item.x for item in buffer.items) / len(buffer.items)
    cz = sum(item.z for item in buffer.items) / len(buffer.items)
    return focus_sample(cx, mean_y, cz, "rectangle", stats)


def playback_plan(
    buffer: Optional[RegionBuffer],
    stats: DatasetStats,
    sound: SonificationConfig | None = None,
) -> tuple[RegionBuffer, PlaybackPlan]:
    """Advance the playback-mode cycle and lay out the next playback.

    Press parity picks the mode: first press sequential, second aggregated,
    third sequential again. Sequential entries run item_dur seconds with an
    exact gap of seq_gap seconds between them; the aggregated plan is one
    mean-value tone.
    """
    if buffer is None:
        raise NoBufferStoredError("no region selection stored")
    if not buffer.items:
        raise EmptyBufferError("stored region holds no items")
    cfg = sound or SonificationConfig()

    presses = buffer.g_press_parity + 1
    mode = SEQUENTIAL if presses % 2 == 1 else AGGREGATED
    buffer = replace(buffer, g_press_parity=presses, playback_mode=mode)

    if mode == SEQUENTIAL:
        step = cfg.seq_item_dur_s + cfg.seq_gap_s
        plan = tuple(
            PlanEntry(focus=item, start_s=k * step, dur_s=cfg.seq_item_dur_s)
            for k, item in enumerate(sequence_order(buffer))
        )
    else:
        plan = (
            PlanEntry(
                focus=aggregate_focus(buffer, stats),
                start_s=0.0,
                dur_s=cfg.aggregate_dur_s,
                aggregated=True,
            ),
        )
    return buffer, plan


def boundary_watch(
    buffer: Optional[RegionBuffer], cell: tuple[int, int], was_inside: bool
) -> tuple[bool, Optional[EventEnvelope]]:
    """Announce entry/exit transitions of the stored region, nothing else."""
    if buffer is None:
        return False, None
    inside = buffer.bounds.contains(cell)
    if inside == was_inside:
        return inside, None
    text = "Entered selection" if inside else "Left selection"
    return inside, EventEnvelope(ANNOUNCE, {"text": text})


def export_buffer(buffer: RegionBuffer) -> dict:
    """JSON-ready snapshot: the context hook consumed by external tools."""
    return {
        "bounds": {
            "row_min": buffer.bounds.row_min,
            "row_max": buffer.bounds.row_max,
            "col_min": buffer.bounds.col_min,
            "col_max": buffer.bounds.col_max,
        },
        "items": [item.as_payload() for item in buffer.items],
        "mode": buffer.playback_mode,
    }
