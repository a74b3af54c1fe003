import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sonigrid.dataset import (
    build_grid,
    compute_stats,
    detect_lattice,
    export_dataset,
    generate_synthetic,
    normalize,
    parse_dataset,
)
from sonigrid.errors import (
    EmptyDatasetError,
    InvalidParamsError,
    MalformedRowError,
    NonFiniteValueError,
)

from conftest import random_dataset


# ----------------------------------------------------------------- oracles

def brute_mean_std(values):
    """Two-pass reference: mean first, then squared deviations."""
    n = len(values)
    mean = sum(values) / n
    var = sum((v - mean) ** 2 for v in values) / n
    return mean, math.sqrt(var)


def brute_skewness(values):
    n = len(values)
    mean = sum(values) / n
    std = math.sqrt(sum((v - mean) ** 2 for v in values) / n)
    if std == 0:
        return 0.0
    return sum(((v - mean) / std) ** 3 for v in values) / n


def brute_bin(dataset, rows, cols):
    """Independent binning: per-point cell search over explicit edges."""
    xs = [p[0] for p in dataset.points]
    zs = [p[2] for p in dataset.points]
    x_min, x_max = min(xs), max(xs)
    z_min, z_max = min(zs), max(zs)

    def locate(v, lo, hi, n):
        if hi == lo:
            return 0
        for k in range(n):
            upper = lo + (hi - lo) * (k + 1) / n
            if v < upper or (k == n - 1 and v <= hi):
                return k
        raise AssertionError("unbinned value")

    cells = {}
    for i, (x, y, z) in enumerate(dataset.points):
        key = (locate(z, z_min, z_max, rows), locate(x, x_min, x_max, cols))
        cells.setdefault(key, []).append((i, y))
    return cells


# ------------------------------------------------------------------- parse

def test_parse_minimal():
    ds = parse_dataset("x,y,z\n0,1,0\n1,2,1\n")
    assert len(ds) == 2
    assert ds.points == ((0.0, 1.0, 0.0), (1.0, 2.0, 1.0))
    assert ds.axis_values("x").min() == 0.0
    assert ds.axis_values("x").max() == 1.0
    assert [m.label for m in ds.axis_meta] == ["x", "y", "z"]


def test_parse_malformed_row_reports_index():
    with pytest.raises(MalformedRowError) as exc:
        parse_dataset("x,y,z\n0,1,0\n0,abc,0\n")
    assert exc.value.row_index == 1


def test_parse_wrong_field_count():
    with pytest.raises(MalformedRowError):
        parse_dataset("x,y,z\n0,1\n")


def test_parse_non_finite():
    with pytest.raises(NonFiniteValueError):
        parse_dataset("x,y,z\n0,nan,0\n")
    with pytest.raises(NonFiniteValueError):
        parse_dataset("x,y,z\n0,1,inf\n")


def test_parse_empty():
    with pytest.raises(EmptyDatasetError):
        parse_dataset("x,y,z\n")
    with pytest.raises(EmptyDatasetError):
        parse_dataset("")


def test_parse_header_units():
    ds = parse_dataset("wavelength (nm),intensity (AU),time (min)\n1,2,3\n")
    assert ds.axis_meta[0].label == "wavelength"
    assert ds.axis_meta[0].unit == "nm"


def test_benzene_csv_round_trip_count(benzene_dataset):
    text = export_dataset(benzene_dataset)
    assert len(parse_dataset(text)) == 3116


@given(
    st.lists(
        st.tuples(
            st.floats(-1e12, 1e12, allow_nan=False),
            st.floats(-1e12, 1e12, allow_nan=False),
            st.floats(-1e12, 1e12, allow_nan=False),
        ),
        min_size=1,
        max_size=60,
    )
)
def test_export_parse_round_trip_bit_identical(points):
    ds = parse_dataset("x,y,z\n" + "\n".join(f"{x!r},{y!r},{z!r}" for x, y, z in points))
    again = parse_dataset(export_dataset(ds))
    assert again.points == ds.points
    assert again.axis_meta == ds.axis_meta


# ------------------------------------------------------------------- stats

def test_benzene_fig_stats(benzene_dataset):
    stats = compute_stats(benzene_dataset)
    assert stats.count == 3116
    assert round(stats.x.mean, 3) == 160.000
    assert round(stats.x.std, 3) == 23.664
    assert round(stats.z.mean, 3) == 7.500
    assert round(stats.z.std, 3) == 4.387
    assert stats.x.mode == 120.0


def test_single_point_degenerate():
    ds = parse_dataset("x,y,z\n5,5,5\n")
    stats = compute_stats(ds)
    for axis in ("x", "y", "z"):
        a = stats.axis(axis)
        assert a.min == a.max == a.mean == a.median == 5.0
        assert a.std == 0.0
        assert a.range == 0.0
    assert stats.count == 1
    assert stats.y_skewness == 0.0


def test_mode_tie_breaks_to_smallest():
    ds = parse_dataset("x,y,z\n1,0,0\n2,0,0\n2,0,0\n1,0,0\n")
    assert compute_stats(ds).x.mode == 1.0


@pytest.mark.parametrize("seed", range(5))
def test_stats_match_two_pass_oracle(seed):
    ds = random_dataset(seed, n=1000)
    stats = compute_stats(ds)
    for axis in ("x", "y", "z"):
        values = [p[("x", "y", "z").index(axis)] for p in ds.points]
        mean, std = brute_mean_std(values)
        a = stats.axis(axis)
        assert a.mean == pytest.approx(mean, rel=1e-9)
        assert a.std == pytest.approx(std, rel=1e-9)
    assert stats.y_skewness == pytest.approx(
        brute_skewness([p[1] for p in ds.points]), rel=1e-9
    )


# --------------------------------------------------------------- normalize

def test_normalize_endpoints(gaussian_dataset):
    stats = compute_stats(gaussian_dataset)
    assert normalize(stats.x.min, "x", stats) == 0.0
    assert normalize(stats.x.max, "x", stats) == 1.0


def test_normalize_flat_axis():
    ds = parse_dataset("x,y,z\n1,7,0\n2,7,1\n")
    stats = compute_stats(ds)
    assert normalize(7.0, "y", stats) == 0.5
    assert normalize(123.0, "y", stats) == 0.5


@given(
    st.floats(-50, 50, allow_nan=False),
    st.floats(-50, 50, allow_nan=False),
)
@settings(max_examples=200)
def test_normalize_monotone(a, b):
    ds = random_dataset(3, n=50)
    stats = compute_stats(ds)
    lo, hi = min(a, b), max(a, b)
    assert normalize(lo, "x", stats) <= normalize(hi, "x", stats)


# -------------------------------------------------------------------- grid

def test_grid_has_rows_times_cols(gaussian_dataset):
    grid = build_grid(gaussian_dataset, 20, 20)
    assert len(grid.rectangles) == 400
    assert [r.index for r in grid.rectangles] == list(range(400))


def test_grid_partition_is_total(gaussian_dataset):
    grid = build_grid(gaussian_dataset, 20, 20)
    seen = sorted(i for r in grid.rectangles for i in r.member_indices)
    assert seen == list(range(len(gaussian_dataset)))


def test_grid_constant_field():
    ds = parse_dataset("x,y,z\n" + "\n".join(f"{i},4.25,{j}" for i in range(6) for j in range(6)))
    grid = build_grid(ds, 3, 3)
    for rect in grid.rectangles:
        if not rect.empty:
            assert rect.avg_y == 4.25


@pytest.mark.parametrize("seed", range(3))
def test_grid_avg_matches_brute_force(seed):
    rng = np.random.default_rng(seed + 100)
    xs = np.arange(41) * 2.0 + 120.0
    zs = np.arange(76) * 0.2
    pts = tuple(
        (float(x), float(rng.normal()), float(z)) for z in zs for x in xs
    )
    from sonigrid.dataset import AxisMeta, SurfaceDataset

    ds = SurfaceDataset(pts, (AxisMeta("x"), AxisMeta("y"), AxisMeta("z")))
    grid = build_grid(ds, 20, 20)
    cells = brute_bin(ds, 20, 20)
    for (row, col), members in cells.items():
        rect = grid.rectangle_at(row, col)
        assert rect.member_indices == tuple(i for i, _y in members)
        assert rect.avg_y == pytest.approx(
            sum(y for _i, y in members) / len(members), rel=1e-12
        )
    occupied = {(r.index // 20, r.index % 20) for r in grid.rectangles if not r.empty}
    assert occupied == set(cells)


def test_grid_max_edge_in_last_cell():
    ds = parse_dataset("x,y,z\n0,0,0\n10,1,10\n")
    grid = build_grid(ds, 4, 4)
    assert grid.rectangle_at(3, 3).member_indices == (1,)
    assert grid.rectangle_at(0, 0).member_indices == (0,)


def test_grid_degenerate_axis():
    ds = parse_dataset("x,y,z\n1,1,0\n1,2,1\n1,3,2\n")
    grid = build_grid(ds, 2, 2)
    # All x identical: everything lands in column 0.
    assert all(r.empty for r in grid.rectangles if r.index % 2 == 1)


# --------------------------------------------------------------- synthetic

def test_gaussian_point_count(gaussian_dataset):
    assert len(gaussian_dataset) == 2500


def test_benzene_point_count(benzene_dataset):
    assert len(benzene_dataset) == 3116


def test_sinusoidal_zero_amplitude_flat():
    ds = generate_synthetic("sinusoidal", amplitude=0.0)
    assert compute_stats(ds).y.std == 0.0


def test_synthetic_rejects_unknown():
    with pytest.raises(InvalidParamsError):
        generate_synthetic("mystery")
    with pytest.raises(InvalidParamsError):
        generate_synthetic("gaussian", wobble=3)
    with pytest.raises(InvalidParamsError):
        generate_synthetic("gaussian", n=0)


def test_synthetic_deterministic():
    assert generate_synthetic("gaussian").points == generate_synthetic("gaussian").points


def test_builtin_datasets_are_lattices(gaussian_dataset, benzene_dataset):
    info = detect_lattice(benzene_dataset)
    assert info is not None and (info.nx, info.nz) == (41, 76)
    info = detect_lattice(gaussian_dataset)
    assert info is not None and (info.nx, info.nz) == (50, 50)


def test_non_lattice_detected():
    assert detect_lattice(random_dataset(0, n=100)) is None
