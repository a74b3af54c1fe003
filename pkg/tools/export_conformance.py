#!/usr/bin/env python3
"""Regenerate the frontend conformance fixtures from the engine package.

The web app ships its own engine implementation; these fixtures pin it to
this package's behavior through plain files: a bit-exact CSV dataset, the
golden demo script/transcript, mapping tables, peak sets, statistics, and
number-formatting samples. Run from the repository root after any engine
change:

    python3 tools/export_conformance.py
"""

from __future__ import annotations

import json
import shutil
from pathlib import Path

from sonigrid.dataset import build_grid, compute_stats, export_dataset, generate_synthetic, parse_dataset
from sonigrid.navigation import FocusSample
from sonigrid.peaks import detect_peaks
from sonigrid.sonify import params_for, special_cues

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "frontend" / "test" / "fixtures"
GOLDEN = ROOT / "tests" / "golden"


def mapping_table() -> list[dict]:
    rows = []
    steps = [i / 8 for i in range(9)]
    for x in steps:
        for y in steps:
            for z in steps:
                sample = FocusSample(0.0, 0.0, 0.0, x, y, z, "rectangle")
                rows.append(
                    {"x_norm": x, "y_norm": y, "z_norm": z, "params": params_for(sample).as_payload()}
                )
    return rows


def g_format_samples() -> list[dict]:
    ds = generate_synthetic("gaussian")
    values = {v for p in ds.points[:200] for v in p}
    values |= {
        0.0, -0.0, 1.0, -3.0, 0.5, 120.0, 1.523e-08, -1.523e-08, 123456.0,
        1234567.0, 0.0001234567, 9.999999e-05, 1e-4, 2.0, 1996.5, 1e21,
        0.1, 0.30000000000000004, 7.5, 4.387234, 1e6 - 0.5, 999999.5,
    }
    return [{"value": v, "g": "%g" % v} for v in sorted(values)]


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)

    gaussian = generate_synthetic("gaussian")
    csv_text = export_dataset(gaussian)
    (FIXTURES / "gaussian.csv").write_text(csv_text, encoding="utf-8")

    # Everything below is computed from the re-parsed CSV so both languages
    # consume identical doubles.
    dataset = parse_dataset(csv_text)
    stats = compute_stats(dataset)
    grid = build_grid(dataset, 20, 20)

    (FIXTURES / "stats_gaussian.json").write_text(
        json.dumps(
            {
                "count": stats.count,
                "y_skewness": stats.y_skewness,
                **{
                    axis: {
                        "min": a.min, "max": a.max, "mean": a.mean, "median": a.median,
                        "std": a.std, "range": a.range, "mode": a.mode,
                    }
                    for axis, a in (("x", stats.x), ("y", stats.y), ("z", stats.z))
                },
            },
            indent=1,
            sort_keys=True,
        )
    )

    peaks = detect_peaks(grid)
    (FIXTURES / "peaks_gaussian.json").write_text(
        json.dumps(
            [
                {"rect_index": p.rect_index, "sign": p.sign, "x": p.x, "z": p.z, "avg_y": p.avg_y}
                for p in peaks.peaks
            ],
            indent=1,
            sort_keys=True,
        )
    )

    grid_summary = [
        {"index": r.index, "avg_y": r.avg_y, "members": len(r.member_indices), "empty": r.empty}
        for r in grid.rectangles
    ]
    (FIXTURES / "grid_gaussian.json").write_text(json.dumps(grid_summary, sort_keys=True))

    (FIXTURES / "mapping_table.json").write_text(json.dumps(mapping_table(), sort_keys=True))
    (FIXTURES / "special_cues.json").write_text(
        json.dumps(
            {kind: special_cues(kind).as_payload() for kind in
             ("reference", "peak_positive", "peak_negative", "boundary")},
            indent=1,
            sort_keys=True,
        )
    )
    (FIXTURES / "format_samples.json").write_text(json.dumps(g_format_samples(), sort_keys=True))

    shutil.copy(GOLDEN / "demo_script.json", FIXTURES / "demo_script.json")
    shutil.copy(GOLDEN / "demo.transcript.jsonl", FIXTURES / "demo_transcript.jsonl")
    print(f"fixtures written to {FIXTURES}")


if __name__ == "__main__":
    main()
