import json
import subprocess
import sys
from pathlib import Path

import pytest

from sonigrid.dataset import build_grid, generate_synthetic
from sonigrid.events import EVENT_NAMES
from sonigrid.render import decode_wav, encode_wav
from sonigrid.session import ScriptKey, SessionScript, load_dataset, run_script
from sonigrid.errors import DatasetLoadError

from test_peaks import oracle_peaks

GOLDEN = Path(__file__).parent / "golden"


def script(keys, dataset="gaussian", seed=0):
    return SessionScript(dataset, tuple(ScriptKey(k, t) for k, t in keys), seed)


# ------------------------------------------------------------- run_script

def test_jump_script_reaches_oracle_peak():
    transcript, _audio = run_script(script([("J", 0.0)]))
    grid = build_grid(generate_synthetic("gaussian"), 20, 20)
    first = oracle_peaks(grid)[0]
    moves = [r for r in transcript.records if r.name == "focus-moved"]
    assert moves[0].payload["position"] == {
        "row": first[0] // 20,
        "col": first[0] % 20,
    }
    announces = [r.payload["text"] for r in transcript.records if r.name == "announce"]
    assert any(text.startswith("Jump mode. Peak 1") for text in announces)


def test_replay_only_script_never_moves():
    transcript, audio = run_script(script([(".", 0.0), (".", 0.5), (".", 1.0)]))
    assert all(r.name != "focus-moved" for r in transcript.records)
    assert audio.n_frames > 0  # the tones themselves still play


def test_same_script_same_bytes():
    keys = [("ArrowRight", 0.0), ("J", 0.4), ("Escape", 0.8), ("0", 1.0)]
    t1, a1 = run_script(script(keys, seed=5))
    t2, a2 = run_script(script(keys, seed=5))
    assert t1.to_jsonl() == t2.to_jsonl()
    assert encode_wav(a1) == encode_wav(a2)


def test_transcript_names_in_closed_set():
    keys = [
        ("ArrowRight", 0.0),
        ("2", 0.2),
        ("2", 0.4),
        ("D", 0.6),
        ("ArrowUp", 0.8),
        ("Enter", 1.0),
        ("G", 1.2),
        ("A", 1.6),
        ("Escape", 2.4),
    ]
    transcript, _ = run_script(script(keys))
    assert transcript.records
    assert {r.name for r in transcript.records} <= EVENT_NAMES


def test_times_quantize_to_frames():
    transcript, _ = run_script(script([("ArrowRight", 0.5000000001)]))
    assert transcript.records[0].t_s == 0.5
    assert all(r.seq == i for i, r in enumerate(transcript.records))


def test_autoplay_ticks_between_keys():
    keys = [("A", 0.0), ("Escape", 1.0)]
    transcript, _ = run_script(script(keys))
    moves = [r for r in transcript.records if r.name == "focus-moved"]
    # 0.18 s cadence: ticks at 0.18 .. 0.9 -> five sweep steps before the stop.
    assert len(moves) == 5
    assert moves[0].t_s == pytest.approx(0.18, abs=1e-9)
    states = [
        r.payload["state"]
        for r in transcript.records
        if r.name == "autoplay-state-changed"
    ]
    assert states == ["playing", "stopped"]


def test_script_runs_to_sweep_completion():
    ds = generate_synthetic("gaussian", n=5)  # 25 points, tiny sweep
    grid_cells = sum(
        1 for r in build_grid(ds, 20, 20).rectangles if not r.empty
    )
    transcript, _ = run_script(script([("A", 0.0)], dataset="gaussian"))
    # Full 400-cell sweep plays out after the last key.
    moves = [r for r in transcript.records if r.name == "focus-moved"]
    assert len(moves) == 400
    assert transcript.records[-1].payload.get("state") == "finished"


def test_non_decreasing_times_enforced():
    with pytest.raises(ValueError):
        script([("J", 1.0), ("J", 0.5)])


def test_load_dataset_builtin_and_error(tmp_path):
    assert len(load_dataset("benzene_like")) == 3116
    with pytest.raises(DatasetLoadError):
        load_dataset(str(tmp_path / "missing.csv"))
    bad = tmp_path / "bad.csv"
    bad.write_text("x,y,z\n0,abc,0\n")
    with pytest.raises(DatasetLoadError):
        load_dataset(str(bad))


# -------------------------------------------------------------------- CLI

def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "sonigrid.cli", *args],
        capture_output=True,
        text=True,
    )


def test_cli_stats_fig2_values():
    proc = run_cli("stats", "--data", "benzene_like")
    assert proc.returncode == 0
    values = {}
    for line in proc.stdout.splitlines():
        parts = line.split()
        if len(parts) == 3:
            values[(parts[0], parts[1])] = parts[2]
    assert "count 3116" in proc.stdout
    assert float(values[("x", "mean")]) == pytest.approx(160.000, abs=0.0005)
    assert float(values[("x", "std")]) == pytest.approx(23.664, abs=0.0005)
    assert float(values[("z", "mean")]) == pytest.approx(7.500, abs=0.0005)
    assert float(values[("z", "std")]) == pytest.approx(4.387, abs=0.0005)
    assert float(values[("x", "mode")]) == 120.0


def test_cli_peaks_output():
    proc = run_cli("peaks", "--data", "gaussian")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("peaks ")
    assert all(line.split()[2] in ("positive", "negative") for line in lines[1:])


def test_cli_run_writes_outputs(tmp_path):
    wav = tmp_path / "out.wav"
    jsonl = tmp_path / "out.jsonl"
    proc = run_cli(
        "run",
        "--data", "gaussian",
        "--script", str(GOLDEN / "demo_script.json"),
        "--out-wav", str(wav),
        "--out-transcript", str(jsonl),
    )
    assert proc.returncode == 0
    audio = decode_wav(wav.read_bytes())
    assert audio.sample_rate_hz == 48_000
    assert audio.n_frames > 48_000
    records = [json.loads(line) for line in jsonl.read_text().splitlines()]
    assert records
    assert all(set(r) == {"seq", "t_s", "name", "payload"} for r in records)
    assert all(r["name"] in EVENT_NAMES for r in records)


def test_cli_exit_code_two_on_load_error(tmp_path):
    proc = run_cli("stats", "--data", str(tmp_path / "nope.csv"))
    assert proc.returncode == 2
    assert "error" in proc.stderr


def test_cli_config_overrides(tmp_path):
    cfg = tmp_path / "conf.ini"
    cfg.write_text("[grid]\nrows = 5\ncols = 4\n")
    proc = run_cli("peaks", "--data", "gaussian", "--config", str(cfg))
    assert proc.returncode == 0
    # 5x4 grid: indices < 20.
    rect_ids = [int(line.split()[4]) for line in proc.stdout.splitlines()[1:]]
    assert rect_ids and all(i < 20 for i in rect_ids)
