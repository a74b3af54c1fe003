"""Engine configuration: defaults plus optional INI-style overrides.

One file holds every tunable the engine exposes: grid shape, peak-selection
constants, sonification constants, selection flow, autoplay cadence, and the
keybinding table. The shipped defaults are the validated configuration; the
config file only ever overrides individual keys.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field, replace
from pathlib import Path


@dataclass(frozen=True)
class SalienceConfig:
    """Constants for statistical peak selection over grid cells."""

    candidate_count: int = 20
    select_count: int = 10
    threshold_fraction: float = 0.2

    def __post_init__(self) -> None:
        if self.candidate_count <= 0 or self.select_count <= 0:
            raise ValueError("candidate_count and select_count must be positive")
        if not 0.0 < self.threshold_fraction < 1.0:
            raise ValueError("threshold_fraction must be in (0, 1)")


@dataclass(frozen=True)
class SonificationConfig:
    """Every psychoacoustic constant in one place.

    Pitch is logarithmic from ``pitch_min_hz`` to ``pitch_max_hz``; depth
    cues interpolate linearly between their near/far endpoints. Waveform
    selection is driven by normalized height by default; ``waveform_driver``
    may be set to ``x_position`` to derive timbre from the X coordinate
    instead.
    """

    pitch_min_hz: float = 200.0
    pitch_max_hz: float = 800.0
    wet_near: float = 0.20
    wet_far: float = 0.95
    predelay_near_ms: float = 10.0
    predelay_far_ms: float = 90.0
    lowpass_near_hz: float = 6500.0
    lowpass_far_hz: float = 2000.0
    gain_near: float = 1.0
    gain_far: float = 0.3
    waveform_driver: str = "height"  # or "x_position"
    reference_hz: float = 300.0
    reference_dur_s: float = 0.5
    peak_positive_hz: float = 800.0
    peak_negative_hz: float = 400.0
    peak_sweep_ratio: float = 1.5
    peak_dur_s: float = 0.25
    boundary_hz: float = 150.0
    boundary_dur_s: float = 0.1
    data_tone_dur_s: float = 0.3
    seq_item_dur_s: float = 0.3
    seq_gap_s: float = 0.125
    aggregate_dur_s: float = 1.0

    def __post_init__(self) -> None:
        if self.waveform_driver not in ("height", "x_position"):
            raise ValueError(f"unknown waveform_driver {self.waveform_driver!r}")


@dataclass(frozen=True)
class AutoplayConfig:
    interval_s: float = 0.18
    perspective: str = "x_rows"
    tone_dur_s: float = 0.15

    def __post_init__(self) -> None:
        if self.interval_s <= 0:
            raise ValueError("interval_s must be positive")


# Action names the engine understands, with their default key ids. Key ids
# follow browser KeyboardEvent.key spelling so a web front end can pass
# events straight through.
DEFAULT_KEYBINDINGS: dict[str, str] = {
    "left": "ArrowLeft",
    "right": "ArrowRight",
    "forward": "ArrowUp",
    "back": "ArrowDown",
    "toggle_mode": "2",
    "reference": "0",
    "replay": ".",
    "jump": "J",
    "select": "D",
    "playback": "G",
    "autoplay": "A",
    "confirm": "Enter",
    "cancel": "Escape",
}


@dataclass(frozen=True)
class EngineConfig:
    grid_rows: int = 20
    grid_cols: int = 20
    selection_flow: str = "refined"  # "refined" anchors on D; "original" needs Enter
    salience: SalienceConfig = field(default_factory=SalienceConfig)
    sonification: SonificationConfig = field(default_factory=SonificationConfig)
    autoplay: AutoplayConfig = field(default_factory=AutoplayConfig)
    keybindings: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_KEYBINDINGS))

    def __post_init__(self) -> None:
        if self.grid_rows < 1 or self.grid_cols < 1:
            raise ValueError("grid must have at least one row and one column")
        if self.selection_flow not in ("refined", "original"):
            raise ValueError(f"unknown selection_flow {self.selection_flow!r}")
        unknown = set(self.keybindings) - set(DEFAULT_KEYBINDINGS)
        if unknown:
            raise ValueError(f"unknown keybinding actions: {sorted(unknown)}")

    def key_to_action(self) -> dict[str, str]:
        """Invert the binding table; single letters match case-insensitively."""
        table: dict[str, str] = {}
        for action, key in self.keybindings.items():
            table[key] = action
            if len(key) == 1 and key.isalpha():
                table[key.lower()] = action
                table[key.upper()] = action
        return table


def _coerce(raw: str, like: object) -> object:
    if isinstance(like, bool):
        return raw.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(like, int):
        return int(raw)
    if isinstance(like, float):
        return float(raw)
    return raw.strip()


def load_config(path: str | Path | None = None) -> EngineConfig:
    """Build an EngineConfig from defaults plus an optional INI file.

    Sections: ``[grid]`` (rows, cols), ``[selection]`` (flow),
    ``[salience]``, ``[sonification]``, ``[autoplay]``, ``[keys]``
    (action = key id). Unknown keys raise so typos never silently
    fall back to defaults.
    """
    cfg = EngineConfig()
    if path is None:
        return cfg

    parser = configparser.ConfigParser()
    with open(path, encoding="utf-8") as fh:
        parser.read_file(fh)

    if parser.has_section("grid"):
        for key, raw in parser.items("grid"):
            if key == "rows":
                cfg = replace(cfg, grid_rows=int(raw))
            elif key == "cols":
                cfg = replace(cfg, grid_cols=int(raw))
            else:
                raise ValueError(f"unknown [grid] key {key!r}")

    if parser.has_section("selection"):
        for key, raw in parser.items("selection"):
            if key == "flow":
                cfg = replace(cfg, selection_flow=raw.strip())
            else:
                raise ValueError(f"unknown [selection] key {key!r}")

    for section, attr in (
        ("salience", "salience"),
        ("sonification", "sonification"),
        ("autoplay", "autoplay"),
    ):
        if not parser.has_section(section):
            continue
        sub = getattr(cfg, attr)
        updates = {}
        for key, raw in parser.items(section):
            if not hasattr(sub, key):
                raise ValueError(f"unknown [{section}] key {key!r}")
            updates[key] = _coerce(raw, getattr(sub, key))
        cfg = replace(cfg, **{attr: replace(sub, **updates)})

    if parser.has_section("keys"):
        bindings = dict(cfg.keybindings)
        for action, key in parser.items("keys"):
            if action not in DEFAULT_KEYBINDINGS:
                raise ValueError(f"unknown [keys] action {action!r}")
            bindings[action] = key.strip()
        cfg = replace(cfg, keybindings=bindings)

    return cfg
