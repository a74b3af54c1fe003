"""Cursor state, focus resolution, and movement geometry.

The cursor is the single source of interaction truth: which tier is active
(surface cells vs raw points), where the user is, and which interaction
sub-machine (selection, jump, autoplay) currently owns the keys. Movement
helpers here are pure; the engine applies their results and emits events.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .dataset import DatasetStats, GridModel, LatticeInfo, SurfaceDataset, normalize
from .errors import EmptyRectangleError

SURFACE = "surface"
POINT = "point"

IDLE = "idle"
SELECTING = "selecting"
JUMP = "jump"
AUTOPLAY = "autoplay"


@dataclass(frozen=True)
class NavCursor:
    """Position plus interaction mode.

    ``saved_pos`` is present exactly while ``interaction == "jump"``; it
    holds the position to restore when the jump cycle is cancelled.
    """

    mode: str = SURFACE
    grid_pos: tuple[int, int] = (0, 0)
    point_index: int = 0
    interaction: str = IDLE
    saved_pos: Optional[tuple] = None

    def __post_init__(self) -> None:
        if (self.interaction == JUMP) != (self.saved_pos is not None):
            raise ValueError("saved_pos must be present exactly in jump mode")


@dataclass(frozen=True)
class HighlightState:
    """What the visual layer should emphasize.

    focus gets the magenta 4x treatment, selections render white, and the
    cursor is yellow unless it sits inside an active/stored selection.
    """

    focus_highlight: Optional[int] = None
    selection_highlights: frozenset[int] = frozenset()
    cursor_style: str = "yellow"  # or "white"

    FOCUS_COLOR = "magenta"
    FOCUS_SIZE_MULTIPLIER = 4.0
    SELECTION_COLOR = "white"


@dataclass(frozen=True)
class FocusSample:
    """The coordinates under the cursor, raw and normalized."""

    x: float
    y: float
    z: float
    x_norm: float
    y_norm: float
    z_norm: float
    kind: str  # "rectangle" or "point"

    def as_payload(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "z": self.z,
            "x_norm": self.x_norm,
            "y_norm": self.y_norm,
            "z_norm": self.z_norm,
            "kind": self.kind,
        }


def focus_sample(
    x: float, y: float, z: float, kind: str, stats: DatasetStats
) -> FocusSample:
    return FocusSample(
        x=x,
        y=y,
        z=z,
        x_norm=normalize(x, "x", stats),
        y_norm=normalize(y, "y", stats),
        z_norm=normalize(z, "z", stats),
        kind=kind,
    )


def current_focus(
    cursor: NavCursor,
    grid: GridModel,
    dataset: SurfaceDataset,
    stats: DatasetStats,
) -> FocusSample:
    """Resolve the cursor to concrete coordinates.

    Surface mode uses the cell center with its mean height; rectangle
    heights are normalized against the full point-Y range so both tiers are
    pitch-comparable. An empty cell under the cursor is an internal error:
    navigation is required to skip those.
    """
    if cursor.mode == SURFACE:
        row, col = cursor.grid_pos
        rect = grid.rectangle_at(row, col)
        if rect.empty:
            raise EmptyRectangleError(f"cursor on empty cell ({row}, {col})")
        return focus_sample(rect.center_x, rect.avg_y, rect.center_z, "rectangle", stats)
    x, y, z = dataset.points[cursor.point_index]
    return focus_sample(x, y, z, "point", stats)


# Movement deltas per action in (d_row, d_col) grid terms; rows follow Z.
_SURFACE_DELTAS = {
    "left": (0, -1),
    "right": (0, 1),
    "forward": (1, 0),
    "back": (-1, 0),
}


def move_surface(
    grid_pos: tuple[int, int], action: str, grid: GridModel
) -> Optional[tuple[int, int]]:
    """Step one cell, skipping empty cells along the movement axis.

    Returns the new (row, col), or None when no occupied cell exists in
    that direction (a boundary for navigation purposes).
    """
    d_row, d_col = _SURFACE_DELTAS[action]
    row, col = grid_pos
    while True:
        row += d_row
        col += d_col
        if not (0 <= row < grid.rows and 0 <= col < grid.cols):
            return None
        if not grid.rectangle_at(row, col).empty:
            return (row, col)


def move_corner(
    corner: tuple[int, int], action: str, grid: GridModel
) -> Optional[tuple[int, int]]:
    """Step a selection corner one cell geometrically (no empty skipping)."""
    d_row, d_col = _SURFACE_DELTAS[action]
    row, col = corner[0] + d_row, corner[1] + d_col
    if not (0 <= row < grid.rows and 0 <= col < grid.cols):
        return None
    return (row, col)


def move_point(
    index: int, action: str, dataset: SurfaceDataset, lattice: Optional[LatticeInfo]
) -> Optional[int]:
    """Step one point in stored order.

    Left/right walk the index order (one X step on lattice data). On
    lattice data, forward/back jump a whole Z row; without lattice
    structure there is no Z adjacency, so forward/back report a boundary.
    """
    n = len(dataset)
    if lattice is None:
        if action in ("forward", "back"):
            return None
        step = 1 if action == "right" else -1
        new = index + step
        return new if 0 <= new < n else None

    z_row, x_col = lattice.position(index)
    if action == "left":
        x_col -= 1
    elif action == "right":
        x_col += 1
    elif action == "forward":
        z_row += 1
    elif action == "back":
        z_row -= 1
    if not (0 <= x_col < lattice.nx and 0 <= z_row < lattice.nz):
        return None
    return z_row * lattice.z_stride + x_col * lattice.x_stride


def first_occupied_cell(grid: GridModel) -> tuple[int, int]:
    for rect in grid.rectangles:
        if not rect.empty:
            return rect.index // grid.cols, rect.index % grid.cols
    raise EmptyRectangleError("grid has no occupied cells")


def nearest_occupied_cell(grid: GridModel, pos: tuple[int, int]) -> tuple[int, int]:
    """Closest occupied cell by squared center distance; ties row-major."""
    row, col = pos
    if not grid.rectangle_at(row, col).empty:
        return pos
    best = None
    best_key = None
    for rect in grid.rectangles:
        if rect.empty:
            continue
        r, c = rect.index // grid.cols, rect.index % grid.cols
        key = ((r - row) ** 2 + (c - col) ** 2, rect.index)
        if best_key is None or key < best_key:
            best, best_key = (r, c), key
    if best is None:
        raise EmptyRectangleError("grid has no occupied cells")
    return best


def mode_switch_effects(
    old_mode: str,
    new_mode: str,
    cursor: NavCursor,
    grid: GridModel,
    dataset: SurfaceDataset,
) -> str:
    """Announcement text for a display-mode toggle, naming the new position."""
    if old_mode == new_mode:
        raise ValueError("mode did not change")
    if new_mode == POINT:
        x, y, z = dataset.points[cursor.point_index]
        return (
            f"Point mode. Point {cursor.point_index + 1} of {len(dataset)}. "
            f"x {x:g}, y {y:g}, z {z:g}."
        )
    row, col = cursor.grid_pos
    return (
        f"Surface mode. Row {row + 1} of {grid.rows}, "
        f"column {col + 1} of {grid.cols}."
    )


def with_interaction(cursor: NavCursor, interaction: str, saved_pos=None) -> NavCursor:
    return replace(cursor, interaction=interaction, saved_pos=saved_pos)
