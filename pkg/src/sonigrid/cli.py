"""Command-line driver.

    sonigrid run   --data <path|builtin> --script <file> --out-wav <path>
                   --out-transcript <path> [--config <path>] [--seed N]
    sonigrid stats --data <path|builtin> [--config <path>]
    sonigrid peaks --data <path|builtin> [--config <path>]

Builtin dataset names: gaussian, sinusoidal, benzene_like. Exit code 0 on
success, 2 when the dataset cannot be loaded.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import load_config
from .dataset import build_grid, compute_stats
from .errors import DatasetLoadError
from .peaks import detect_peaks
from .render import encode_wav
from .session import SessionScript, load_dataset, run_script

LOAD_ERROR_EXIT = 2


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="dataset path or builtin name")
    parser.add_argument("--config", default=None, help="INI config file")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sonigrid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="replay a key script, render WAV + transcript")
    _add_common(run_p)
    run_p.add_argument("--script", required=True, help="JSON session script")
    run_p.add_argument("--out-wav", required=True)
    run_p.add_argument("--out-transcript", required=True)
    run_p.add_argument("--seed", type=int, default=None, help="override the script seed")

    stats_p = sub.add_parser("stats", help="print dataset statistics")
    _add_common(stats_p)

    peaks_p = sub.add_parser("peaks", help="print detected peaks")
    _add_common(peaks_p)

    return parser


def _cmd_stats(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.data)
    stats = compute_stats(dataset)
    print(f"dataset {dataset.source_name or args.data}")
    print(f"count {stats.count}")
    for axis in ("x", "y", "z"):
        meta = dataset.axis_meta[("x", "y", "z").index(axis)]
        label = f"{meta.label} ({meta.unit})" if meta.unit else meta.label
        a = stats.axis(axis)
        print(f"{axis} label {label}")
        for stat in ("min", "max", "mean", "median", "std", "range", "mode"):
            print(f"{axis} {stat} {getattr(a, stat):.3f}")
    print(f"y skewness {stats.y_skewness:.3f}")
    return 0


def _cmd_peaks(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    dataset = load_dataset(args.data)
    grid = build_grid(dataset, config.grid_rows, config.grid_cols)
    peak_set = detect_peaks(grid, config.salience)
    print(f"peaks {len(peak_set)}")
    for i, peak in enumerate(peak_set.peaks):
        print(
            f"peak {i + 1} {peak.sign} rect {peak.rect_index} "
            f"x {peak.x:.6g} z {peak.z:.6g} avg_y {peak.avg_y:.6g}"
        )
    return 0


def _cmd_run(args: argparse.Namespace) -> int:
    config = load_config(args.config)
    script = SessionScript.from_file(args.script)
    script = dataclasses.replace(script, dataset_ref=args.data)
    if args.seed is not None:
        script = dataclasses.replace(script, seed=args.seed)
    transcript, audio = run_script(script, config)
    Path(args.out_wav).write_bytes(encode_wav(audio))
    Path(args.out_transcript).write_text(transcript.to_jsonl(), encoding="utf-8")
    print(f"events {len(transcript.records)}")
    print(f"frames {audio.n_frames}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"run": _cmd_run, "stats": _cmd_stats, "peaks": _cmd_peaks}
    try:
        return handlers[args.command](args)
    except DatasetLoadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return LOAD_ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
