"""Height-field dataset ingestion, statistics, and grid binning.

A dataset is a list of (x, y, z) samples where y is the surface height over
the X-Z plane. This module parses and validates CSV input, computes the
per-axis statistics shown in the stats sidebar, normalizes coordinates into
[0, 1] for the audio mappings, and bins points into the two-tier wireframe
grid that surface-mode navigation walks.

All functions here are pure: they share no mutable state and may be called
concurrently.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyDatasetError,
    InvalidParamsError,
    MalformedRowError,
    NonFiniteValueError,
)

AXES = ("x", "y", "z")


@dataclass(frozen=True)
class AxisMeta:
    label: str
    unit: str = ""


@dataclass(frozen=True)
class SurfaceDataset:
    """Validated (x, y, z) samples plus axis metadata.

    Invariant: ``points`` is non-empty and every coordinate is finite.
    """

    points: tuple[tuple[float, float, float], ...]
    axis_meta: tuple[AxisMeta, AxisMeta, AxisMeta]
    source_name: str = ""

    def __post_init__(self) -> None:
        if not self.points:
            raise EmptyDatasetError("dataset has no points")

    def __len__(self) -> int:
        return len(self.points)

    def axis_values(self, axis: str) -> np.ndarray:
        idx = AXES.index(axis)
        return np.asarray([p[idx] for p in self.points], dtype=np.float64)


@dataclass(frozen=True)
class AxisStats:
    min: float
    max: float
    mean: float
    median: float
    std: float
    range: float
    mode: float


@dataclass(frozen=True)
class DatasetStats:
    """Per-axis summary statistics plus point count and Y skewness.

    Standard deviation is the population flavor (divide by N), and skewness
    is the third standardized moment of Y. Mode ties break toward the
    smallest value.
    """

    x: AxisStats
    y: AxisStats
    z: AxisStats
    count: int
    y_skewness: float

    def axis(self, axis: str) -> AxisStats:
        return {"x": self.x, "y": self.y, "z": self.z}[axis]


@dataclass(frozen=True)
class GridRectangle:
    index: int
    center_x: float
    center_z: float
    avg_y: float
    member_indices: tuple[int, ...]
    empty: bool


@dataclass(frozen=True)
class GridModel:
    """rows x cols cells over [x_min, x_max] x [z_min, z_max], row-major.

    Rows index Z (front-to-back), columns index X (left-to-right);
    rectangle ``index == row * cols + col``. Cells are half-open except the
    last one per axis, which absorbs its max edge so no boundary point is
    lost.
    """

    rows: int
    cols: int
    rectangles: tuple[GridRectangle, ...]
    x_min: float
    x_max: float
    z_min: float
    z_max: float

    def rectangle_at(self, row: int, col: int) -> GridRectangle:
        return self.rectangles[row * self.cols + col]

    def cell_of(self, x: float, z: float) -> tuple[int, int]:
        """Map a coordinate to its (row, col) cell, clamped to the grid."""
        col = _bin_index(x, self.x_min, self.x_max, self.cols)
        row = _bin_index(z, self.z_min, self.z_max, self.rows)
        return row, col


@dataclass(frozen=True)
class LatticeInfo:
    """Detected regular-grid structure of the point list, if any.

    Point-mode navigation uses this to step along X within a row and along
    Z across rows. ``None`` strides mean the dataset is not a lattice in
    its stored order and only index-order traversal is available.
    """

    nx: int
    nz: int
    x_stride: int
    z_stride: int

    def position(self, index: int) -> tuple[int, int]:
        """(z_row, x_col) of a point index."""
        if self.x_stride == 1:
            return index // self.nx, index % self.nx
        return index % self.nz, index // self.nz


def _parse_header(line: str) -> tuple[AxisMeta, AxisMeta, AxisMeta]:
    names = [c.strip() for c in line.split(",")]
    if len(names) != 3 or any(not n for n in names):
        raise MalformedRowError(0, line, "header must name exactly three columns")
    metas = []
    for name in names:
        # "wavelength (nm)" -> label "wavelength", unit "nm"
        if "(" in name and name.endswith(")"):
            label, unit = name.split("(", 1)
            metas.append(AxisMeta(label.strip(), unit[:-1].strip()))
        else:
            metas.append(AxisMeta(name))
    return metas[0], metas[1], metas[2]


def parse_dataset(csv_text: str, source_name: str = "") -> SurfaceDataset:
    """Parse CSV text (header row + numeric rows) into a dataset.

    Row indices in errors are 0-based over data rows, header excluded.
    """
    lines = [ln for ln in csv_text.splitlines() if ln.strip()]
    if not lines:
        raise EmptyDatasetError("no header row")
    axis_meta = _parse_header(lines[0])

    points: list[tuple[float, float, float]] = []
    for i, line in enumerate(lines[1:]):
        parts = line.split(",")
        if len(parts) != 3:
            raise MalformedRowError(i, line, f"expected 3 fields, got {len(parts)}")
        coords = []
        for part, axis in zip(parts, AXES):
            try:
                value = float(part)
            except ValueError:
                raise MalformedRowError(i, line, f"non-numeric {axis} field {part.strip()!r}") from None
            if not math.isfinite(value):
                raise NonFiniteValueError(i, axis, value)
            coords.append(value)
        points.append((coords[0], coords[1], coords[2]))

    if not points:
        raise EmptyDatasetError("header present but no data rows")
    return SurfaceDataset(tuple(points), axis_meta, source_name)


def export_dataset(dataset: SurfaceDataset) -> str:
    """CSV text that reparses to a bit-identical dataset.

    repr() of a float is its shortest round-tripping form, so
    parse(export(d)) reproduces every coordinate exactly.
    """
    def header_name(meta: AxisMeta) -> str:
        return f"{meta.label} ({meta.unit})" if meta.unit else meta.label

    lines = [",".join(header_name(m) for m in dataset.axis_meta)]
    for x, y, z in dataset.points:
        lines.append(f"{x!r},{y!r},{z!r}")
    return "\n".join(lines) + "\n"


def _axis_stats(values: np.ndarray) -> AxisStats:
    # Population std; mode ties break toward the smallest value.
    counts = Counter(values.tolist())
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))[0]
    vmin = float(values.min())
    vmax = float(values.max())
    return AxisStats(
        min=vmin,
        max=vmax,
        mean=float(values.mean()),
        median=float(np.median(values)),
        std=float(values.std()),
        range=vmax - vmin,
        mode=float(best),
    )


def compute_stats(dataset: SurfaceDataset) -> DatasetStats:
    xs = dataset.axis_values("x")
    ys = dataset.axis_values("y")
    zs = dataset.axis_values("z")
    std_y = float(ys.std())
    if std_y == 0.0:
        skew = 0.0
    else:
        skew = float(np.mean((ys - ys.mean()) ** 3) / std_y**3)
    return DatasetStats(
        x=_axis_stats(xs),
        y=_axis_stats(ys),
        z=_axis_stats(zs),
        count=len(dataset),
        y_skewness=skew,
    )


def normalize(value: float, axis: str, stats: DatasetStats) -> float:
    """(value - min) / range for the axis, 0.5 on a flat axis.

    The result is clamped to [0, 1] so float round-off on derived values
    (cell centers, means) can never leak out-of-range input to the audio
    mappings.
    """
    a = stats.axis(axis)
    if a.range == 0.0:
        return 0.5
    return min(1.0, max(0.0, (value - a.min) / a.range))


def _bin_index(value: float, lo: float, hi: float, n_cells: int) -> int:
    if hi == lo:
        return 0
    idx = int((value - lo) / (hi - lo) * n_cells)
    # Max-edge values land in the last cell instead of falling off the grid.
    return min(max(idx, 0), n_cells - 1)


def build_grid(dataset: SurfaceDataset, rows: int = 20, cols: int = 20) -> GridModel:
    """Bin points into a rows x cols grid over the X-Z bounding box."""
    if rows < 1 or cols < 1:
        raise InvalidParamsError("grid needs at least one row and one column")

    xs = dataset.axis_values("x")
    zs = dataset.axis_values("z")
    x_min, x_max = float(xs.min()), float(xs.max())
    z_min, z_max = float(zs.min()), float(zs.max())

    members: list[list[int]] = [[] for _ in range(rows * cols)]
    for i, (x, _y, z) in enumerate(dataset.points):
        col = _bin_index(x, x_min, x_max, cols)
        row = _bin_index(z, z_min, z_max, rows)
        members[row * cols + col].append(i)

    cell_w = (x_max - x_min) / cols
    cell_d = (z_max - z_min) / rows
    rectangles = []
    for row in range(rows):
        for col in range(cols):
            idx = row * cols + col
            member = members[idx]
            if member:
                # Sequential sum, not np.mean: cell means must be bit-for-bit
                # reproducible by any IEEE-double implementation (the web
                # front end recomputes them), and pairwise summation is not.
                avg_y = sum(dataset.points[i][1] for i in member) / len(member)
            else:
                avg_y = 0.0
            rectangles.append(
                GridRectangle(
                    index=idx,
                    center_x=x_min + (col + 0.5) * cell_w,
                    center_z=z_min + (row + 0.5) * cell_d,
                    avg_y=avg_y,
                    member_indices=tuple(member),
                    empty=not member,
                )
            )
    return GridModel(rows, cols, tuple(rectangles), x_min, x_max, z_min, z_max)


def detect_lattice(dataset: SurfaceDataset) -> LatticeInfo | None:
    """Recognize point lists stored in regular grid order.

    Returns strides for both x-fastest and z-fastest layouts; None when the
    points do not form a full lattice in their stored order.
    """
    xs = sorted({p[0] for p in dataset.points})
    zs = sorted({p[2] for p in dataset.points})
    nx, nz = len(xs), len(zs)
    if nx * nz != len(dataset):
        return None

    pts = dataset.points
    if all(pts[i][0] == xs[i % nx] and pts[i][2] == zs[i // nx] for i in range(len(pts))):
        return LatticeInfo(nx=nx, nz=nz, x_stride=1, z_stride=nx)
    if all(pts[i][0] == xs[i // nz] and pts[i][2] == zs[i % nz] for i in range(len(pts))):
        return LatticeInfo(nx=nx, nz=nz, x_stride=nz, z_stride=1)
    return None


def _lattice_points(
    xs: Iterable[float], zs: Iterable[float], height
) -> tuple[tuple[float, float, float], ...]:
    return tuple((x, height(x, z), z) for z in zs for x in xs)


def generate_synthetic(kind: str, **params) -> SurfaceDataset:
    """Deterministic builtin surfaces used as fixtures and demo data.

    kinds:
      gaussian     single bump exp(-r^2); default 50x50 = 2,500 points
      sinusoidal   product of sines; default 40x40
      benzene_like 41x76 lattice (x: 120..200 step 2, z: 0..15 step 0.2)
                   with a sharp intensity peak, 3,116 points
    """
    if kind == "gaussian":
        n = int(params.pop("n", 50))
        amplitude = float(params.pop("amplitude", 1.0))
        extent = float(params.pop("extent", 3.0))
        _reject_extra(kind, params)
        if n < 1 or extent <= 0:
            raise InvalidParamsError("gaussian needs n >= 1 and extent > 0")
        axis = [(-extent + 2 * extent * i / (n - 1)) if n > 1 else 0.0 for i in range(n)]
        points = _lattice_points(axis, axis, lambda x, z: amplitude * math.exp(-(x * x + z * z)))
        meta = (AxisMeta("x"), AxisMeta("height"), AxisMeta("z"))
        return SurfaceDataset(points, meta, "gaussian")

    if kind == "sinusoidal":
        n = int(params.pop("n", 40))
        amplitude = float(params.pop("amplitude", 1.0))
        periods = float(params.pop("periods", 2.0))
        _reject_extra(kind, params)
        if n < 1:
            raise InvalidParamsError("sinusoidal needs n >= 1")
        axis = [i / max(n - 1, 1) for i in range(n)]
        k = 2 * math.pi * periods
        points = _lattice_points(
            axis, axis, lambda x, z: amplitude * math.sin(k * x) * math.sin(k * z)
        )
        meta = (AxisMeta("x"), AxisMeta("height"), AxisMeta("z"))
        return SurfaceDataset(points, meta, "sinusoidal")

    if kind == "benzene_like":
        _reject_extra(kind, params)
        xs = [120.0 + 2.0 * i for i in range(41)]       # wavelength, nm
        zs = [round(0.2 * j, 10) for j in range(76)]    # time, minutes

        def intensity(x: float, z: float) -> float:
            # Sharp absorption-style peak near 180 nm mid-run, tiny baseline.
            peak = 2.0 * math.exp(-(((x - 180.0) / 3.0) ** 2 + ((z - 7.5) / 1.5) ** 2))
            baseline = 0.02 * math.exp(-((x - 120.0) / 40.0))
            return peak + baseline

        points = _lattice_points(xs, zs, intensity)
        meta = (
            AxisMeta("wavelength", "nm"),
            AxisMeta("intensity", "AU"),
            AxisMeta("time", "min"),
        )
        return SurfaceDataset(points, meta, "benzene_like")

    raise InvalidParamsError(f"unknown synthetic kind {kind!r}")


def _reject_extra(kind: str, params: dict) -> None:
    if params:
        raise InvalidParamsError(f"unknown {kind} params: {sorted(params)}")


BUILTIN_DATASETS: Sequence[str] = ("gaussian", "sinusoidal", "benzene_like")
