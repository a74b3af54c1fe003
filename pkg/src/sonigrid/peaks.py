"""Statistical peak selection over grid cells and the jump cycle.

Selection works on occupied wireframe cells only. From the cells ranked by
mean height it draws a high candidate pool and a low candidate pool (the
pools never share a cell; the low pool is drawn from the cells left after
the high pool is taken, so degenerate flat data still yields two disjoint
pools). A proximity test against the mean decides whether only highs, only
lows, or both survive; the final list carries at most ``select_count`` of
each, highs sorted descending, lows ascending, ties by cell index.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .config import SalienceConfig
from .dataset import GridModel, GridRectangle
from .errors import NoPeaksError, NoRectanglesError

POSITIVE = "positive"
NEGATIVE = "negative"


@dataclass(frozen=True)
class Peak:
    rect_index: int
    sign: str
    x: float
    z: float
    avg_y: float


@dataclass(frozen=True)
class PeakSet:
    """Ordered peaks plus the jump cursor into them.

    Positives precede negatives; positives descend by height, negatives
    ascend; no two peaks share an (x, z, avg_y) triple.
    """

    peaks: tuple[Peak, ...]
    cursor: int = 0

    def __len__(self) -> int:
        return len(self.peaks)

    def current(self) -> Peak:
        return self.peaks[self.cursor]

    def advanced(self) -> "PeakSet":
        return replace(self, cursor=(self.cursor + 1) % len(self.peaks))


def detect_peaks(grid: GridModel, config: SalienceConfig | None = None) -> PeakSet:
    """Select the most salient high/low cells of a grid.

    Steps: rank occupied cells by avg_y; take the top ``candidate_count``
    as high candidates and, from the remaining cells, the bottom
    ``candidate_count`` as low candidates (pools deduplicated by
    (x, z, avg_y) by construction); compute mean/min/max/range of cell
    avg_y; threshold = range * threshold_fraction; a candidate is within
    threshold iff |avg_y - mean| <= threshold; keep only highs when every
    low candidate is within threshold but some high is not, only lows in
    the mirrored case, otherwise both; truncate to ``select_count`` per
    sign and order per the PeakSet contract.
    """
    cfg = config or SalienceConfig()
    cells = [r for r in grid.rectangles if not r.empty]
    if not cells:
        raise NoRectanglesError("no occupied cells to scan")

    by_height_desc = sorted(cells, key=lambda r: (-r.avg_y, r.index))
    top_pool = by_height_desc[: cfg.candidate_count]
    taken = {(r.center_x, r.center_z, r.avg_y) for r in top_pool}
    remaining = [r for r in cells if (r.center_x, r.center_z, r.avg_y) not in taken]
    bottom_pool = sorted(remaining, key=lambda r: (r.avg_y, r.index))[: cfg.candidate_count]

    heights = [r.avg_y for r in cells]
    mean = sum(heights) / len(heights)
    threshold = (max(heights) - min(heights)) * cfg.threshold_fraction

    def within(rect: GridRectangle) -> bool:
        return abs(rect.avg_y - mean) <= threshold

    lows_all_within = all(within(r) for r in bottom_pool)
    highs_all_within = all(within(r) for r in top_pool)

    keep_high, keep_low = True, True
    if lows_all_within and not highs_all_within:
        keep_low = False
    elif highs_all_within and not lows_all_within:
        keep_high = False

    peaks: list[Peak] = []
    if keep_high:
        for r in top_pool[: cfg.select_count]:
            peaks.append(Peak(r.index, POSITIVE, r.center_x, r.center_z, r.avg_y))
    if keep_low:
        for r in bottom_pool[: cfg.select_count]:
            peaks.append(Peak(r.index, NEGATIVE, r.center_x, r.center_z, r.avg_y))
    return PeakSet(tuple(peaks))


def enter_jump(grid: GridModel, config: SalienceConfig | None = None) -> PeakSet:
    """Detect peaks for a fresh jump cycle; fails if nothing is salient."""
    peak_set = detect_peaks(grid, config)
    if len(peak_set) == 0:
        raise NoPeaksError("no peaks detected")
    return peak_set


def peak_position(peak: Peak, grid: GridModel) -> tuple[int, int]:
    return peak.rect_index // grid.cols, peak.rect_index % grid.cols


def jump_announcement(peak_set: PeakSet, entering: bool) -> str:
    peak = peak_set.current()
    sign = "Positive" if peak.sign == POSITIVE else "Negative"
    prefix = "Jump mode. " if entering else ""
    return f"{prefix}Peak {peak_set.cursor + 1} of {len(peak_set)}. {sign} peak."
