import numpy as np
import pytest

from sonigrid.config import EngineConfig
from sonigrid.dataset import compute_stats
from sonigrid.engine import Engine
from sonigrid.errors import EmptyBufferError, NoBufferStoredError
from sonigrid.events import SELECTION_CONFIRMED
from sonigrid.navigation import FocusSample
from sonigrid.regions import (
    Bounds,
    RegionBuffer,
    aggregate_mean,
    boundary_watch,
    export_buffer,
    playback_plan,
    sequence_order,
)



def sample(x, y, z, kind="rectangle"):
    return FocusSample(x, y, z, 0.5, 0.5, 0.5, kind)


def make_buffer(triples, kind="rectangle"):
    items = tuple(sample(x, y, z, kind) for x, y, z in triples)
    return RegionBuffer(bounds=Bounds(0, 19, 0, 19), items=items)


def drive(engine, keys):
    out = []
    for key in keys:
        out.extend(engine.press(key).events)
    return out


# --------------------------------------------------------- selection flows

def test_refined_flow_six_by_seven(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    # Park at row 2, col 2, anchor, stretch to row 7, col 8.
    drive(engine, ["ArrowUp", "ArrowUp", "ArrowRight", "ArrowRight"])
    assert engine.cursor.grid_pos == (2, 2)
    drive(engine, ["D"])
    keys = ["ArrowUp"] * 5 + ["ArrowRight"] * 6
    drive(engine, keys)
    events = drive(engine, ["Enter"])
    names = [e.name for e in events]
    assert SELECTION_CONFIRMED in names
    texts = [e.payload.get("text") for e in events if e.name == "announce"]
    assert "Buffer saved: 6 by 7 region" in texts
    assert engine.buffer.bounds == Bounds(2, 7, 2, 8)
    assert engine.buffer.items  # dense surface: every cell occupied
    assert len(engine.buffer.items) == 6 * 7


def test_refined_one_by_one(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    events = drive(engine, ["D", "Enter"])
    texts = [e.payload.get("text") for e in events if e.name == "announce"]
    assert "Buffer saved: 1 by 1 region" in texts
    assert len(engine.buffer.items) == 1


def test_escape_cancels_without_storing(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    events = drive(engine, ["D", "ArrowRight", "ArrowUp", "Escape"])
    assert engine.buffer is None
    assert engine.selection.phase == "inactive"
    assert all(e.name != SELECTION_CONFIRMED for e in events)


def test_original_flow_requires_enter_anchor(gaussian_dataset):
    engine = Engine(gaussian_dataset, EngineConfig(selection_flow="original"))
    drive(engine, ["D"])
    assert engine.selection.phase == "anchored"
    # While armed, arrows still navigate; the anchor follows the cursor.
    drive(engine, ["ArrowRight", "ArrowUp"])
    assert engine.selection.anchor == engine.cursor.grid_pos
    drive(engine, ["Enter"])
    assert engine.selection.phase == "expanding"
    drive(engine, ["ArrowRight", "Enter"])
    assert engine.buffer is not None
    assert engine.buffer.bounds.n_cols == 2
    assert engine.buffer.bounds.n_rows == 1


def test_expand_announces_dimensions(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["D"])
    events = drive(engine, ["ArrowRight"])
    texts = [e.payload.get("text") for e in events if e.name == "announce"]
    assert "Selecting: 1 by 2 region." in texts


def test_buffer_persists_until_next_confirm(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["D", "ArrowRight", "Enter"])
    first = engine.buffer
    drive(engine, ["ArrowUp", "ArrowUp", "ArrowRight", "2", "2"])
    assert engine.buffer is first
    drive(engine, ["D", "Escape"])  # cancelled selection keeps the old buffer
    assert engine.buffer is first
    drive(engine, ["D", "ArrowUp", "Enter"])
    assert engine.buffer is not first


def test_point_mode_selection_captures_points(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["2"])  # point mode
    drive(engine, ["D", "ArrowRight", "ArrowUp", "Enter"])
    assert engine.buffer is not None
    assert engine.buffer.items
    assert all(item.kind == "point" for item in engine.buffer.items)
    grid = engine.grid
    for item in engine.buffer.items:
        assert engine.buffer.bounds.contains(grid.cell_of(item.x, item.z))


# ----------------------------------------------------------- aggregation

def test_aggregate_mean_simple():
    assert aggregate_mean(make_buffer([(0, 1, 0), (1, 2, 0), (2, 3, 0)])) == 2.0


def test_aggregate_mean_single_item():
    assert aggregate_mean(make_buffer([(0, 7.5, 0)])) == 7.5


def test_aggregate_mean_whole_grid(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["D"] + ["ArrowRight"] * 19 + ["ArrowUp"] * 19 + ["Enter"])
    occupied = [r for r in engine.grid.rectangles if not r.empty]
    brute = sum(r.avg_y for r in occupied) / len(occupied)
    assert aggregate_mean(engine.buffer) == pytest.approx(brute, abs=1e-12)


@pytest.mark.parametrize("seed", range(10))
def test_aggregate_mean_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 60))
    triples = [(float(x), float(y), float(z)) for x, y, z in rng.normal(size=(n, 3))]
    buffer = make_buffer(triples)
    brute = sum(y for _x, y, _z in triples) / n
    assert aggregate_mean(buffer) == pytest.approx(brute, abs=1e-12)


def test_aggregate_mean_empty_raises():
    buffer = RegionBuffer(bounds=Bounds(0, 0, 0, 0), items=())
    with pytest.raises(EmptyBufferError):
        aggregate_mean(buffer)


# -------------------------------------------------------------- ordering

def test_sequence_order_two_by_two():
    buffer = make_buffer([(1, 0, 1), (0, 0, 0), (1, 0, 0), (0, 0, 1)])
    ordered = sequence_order(buffer)
    assert [(s.x, s.z) for s in ordered] == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_sequence_order_single_row():
    buffer = make_buffer([(3, 0, 0), (1, 0, 0), (2, 0, 0)])
    assert [s.x for s in sequence_order(buffer)] == [1, 2, 3]


@pytest.mark.parametrize("seed", range(10))
def test_sequence_order_matches_sort_oracle(seed):
    rng = np.random.default_rng(seed + 50)
    n = int(rng.integers(1, 80))
    # Coarse coordinates force plenty of ties for the index tie-break.
    triples = [
        (float(rng.integers(0, 4)), float(y), float(rng.integers(0, 4)))
        for y in rng.normal(size=n)
    ]
    buffer = make_buffer(triples)
    oracle = [
        item
        for _k, item in sorted(
            ((item.z, item.x, i), item) for i, item in enumerate(buffer.items)
        )
    ]
    assert list(sequence_order(buffer)) == oracle


def test_sequence_order_is_permutation_and_idempotent():
    rng = np.random.default_rng(4)
    triples = [tuple(map(float, t)) for t in rng.normal(size=(30, 3))]
    buffer = make_buffer(triples)
    ordered = sequence_order(buffer)
    assert sorted(ordered, key=id) != []  # smoke: non-empty
    assert sorted((s.x, s.y, s.z) for s in ordered) == sorted(
        (s.x, s.y, s.z) for s in buffer.items
    )
    again = sequence_order(RegionBuffer(bounds=buffer.bounds, items=ordered))
    assert list(again) == list(ordered)


# -------------------------------------------------------------- playback

def stats_for(dataset):
    return compute_stats(dataset)


def test_playback_plan_sequential_span(gaussian_dataset):
    stats = stats_for(gaussian_dataset)
    buffer = make_buffer([(0, 0.1, 0), (1, 0.2, 0), (2, 0.3, 0), (3, 0.4, 0)])
    buffer, plan = playback_plan(buffer, stats)
    assert buffer.playback_mode == "sequential"
    assert len(plan) == 4
    span = plan[-1].start_s + plan[-1].dur_s
    assert span == pytest.approx(4 * 0.3 + 3 * 0.125)
    gaps = [b.start_s - (a.start_s + a.dur_s) for a, b in zip(plan, plan[1:])]
    assert all(g == pytest.approx(0.125, abs=0.0) for g in gaps)
    starts = [e.start_s for e in plan]
    assert starts == sorted(starts) and len(set(starts)) == len(starts)


def test_playback_plan_parity_cycle(gaussian_dataset):
    stats = stats_for(gaussian_dataset)
    buffer = make_buffer([(0, 1, 0), (1, 2, 0)])
    buffer, plan1 = playback_plan(buffer, stats)
    assert buffer.playback_mode == "sequential"
    buffer, plan2 = playback_plan(buffer, stats)
    assert buffer.playback_mode == "aggregated"
    assert len(plan2) == 1
    assert plan2[0].dur_s == 1.0
    assert plan2[0].aggregated
    assert plan2[0].focus.y == pytest.approx(1.5)
    buffer, plan3 = playback_plan(buffer, stats)
    assert buffer.playback_mode == "sequential"
    assert [e.start_s for e in plan3] == [e.start_s for e in plan1]


def test_playback_requires_buffer(gaussian_dataset):
    with pytest.raises(NoBufferStoredError):
        playback_plan(None, stats_for(gaussian_dataset))


def test_playback_mode_only_changes_on_press(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["D", "ArrowRight", "Enter"])
    mode_before = engine.buffer.playback_mode
    drive(engine, ["ArrowUp", "ArrowDown", "2", "2", "."])
    assert engine.buffer.playback_mode == mode_before
    drive(engine, ["G"])
    assert engine.buffer.g_press_parity == 1


# -------------------------------------------------------- boundary watch

def test_boundary_watch_transitions():
    buffer = RegionBuffer(bounds=Bounds(2, 4, 2, 4), items=(sample(0, 0, 0),))
    inside, event = boundary_watch(buffer, (3, 3), was_inside=False)
    assert inside and event.payload["text"] == "Entered selection"
    inside, event = boundary_watch(buffer, (3, 4), was_inside=True)
    assert inside and event is None
    inside, event = boundary_watch(buffer, (5, 4), was_inside=True)
    assert not inside and event.payload["text"] == "Left selection"
    inside, event = boundary_watch(None, (0, 0), was_inside=False)
    assert not inside and event is None


def test_walk_across_region_announces_twice_each(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    # Region covering rows 0..19, cols 2..3: walk right through and back.
    drive(engine, ["ArrowRight", "ArrowRight", "D"] + ["ArrowUp"] * 19 + ["ArrowRight", "Enter"])
    drive(engine, ["ArrowDown"] * 19)  # back to row 0, inside the region
    texts = []
    walk = ["ArrowRight"] * 4 + ["ArrowLeft"] * 4 + ["ArrowRight"] * 4 + ["ArrowLeft"] * 4
    for key in walk:
        for e in engine.press(key).events:
            if e.name == "announce" and e.payload["text"] in ("Entered selection", "Left selection"):
                texts.append(e.payload["text"])
    assert texts == [
        "Left selection",
        "Entered selection",
        "Left selection",
        "Entered selection",
    ]
    assert texts.count("Entered selection") == 2
    assert texts.count("Left selection") == 2


# ---------------------------------------------------------------- export

def test_export_buffer_schema(gaussian_dataset):
    engine = Engine(gaussian_dataset)
    drive(engine, ["D", "ArrowRight", "Enter", "G"])
    out = export_buffer(engine.buffer)
    assert set(out) == {"bounds", "items", "mode"}
    assert set(out["bounds"]) == {"row_min", "row_max", "col_min", "col_max"}
    assert out["mode"] == "sequential"
    assert all(set(item) == {"x", "y", "z", "x_norm", "y_norm", "z_norm", "kind"} for item in out["items"])


def test_confirm_without_anchor_raises(gaussian_dataset):
    from sonigrid.dataset import build_grid
    from sonigrid.errors import ConfirmWithoutAnchorError
    from sonigrid.regions import SelectionState, confirm_selection

    grid = build_grid(gaussian_dataset, 20, 20)
    stats = compute_stats(gaussian_dataset)
    with pytest.raises(ConfirmWithoutAnchorError):
        confirm_selection(SelectionState(), "surface", grid, gaussian_dataset, stats)


def test_sequence_order_empty_raises():
    with pytest.raises(EmptyBufferError):
        sequence_order(RegionBuffer(bounds=Bounds(0, 0, 0, 0), items=()))


def test_playback_plan_empty_items_raises(gaussian_dataset):
    buffer = RegionBuffer(bounds=Bounds(0, 0, 0, 0), items=())
    with pytest.raises(EmptyBufferError):
        playback_plan(buffer, compute_stats(gaussian_dataset))
