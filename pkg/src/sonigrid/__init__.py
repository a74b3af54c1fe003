"""Keyboard-driven, sonified exploration of 3D height-field surfaces.

The engine is split along its data flow: `dataset` ingests and bins the
height field, `engine` owns interaction state and emits events plus audio
requests, `sonify` maps focus samples to audio parameters, and `render`
realizes them as deterministic stereo PCM. `session` replays scripted runs
for testing and reproduction; `cli` wraps it all for the command line.
"""

from .config import EngineConfig, SalienceConfig, SonificationConfig, load_config
from .dataset import (
    BUILTIN_DATASETS,
    DatasetStats,
    GridModel,
    SurfaceDataset,
    build_grid,
    compute_stats,
    export_dataset,
    generate_synthetic,
    normalize,
    parse_dataset,
)
from .engine import Engine, StepResult
from .events import EVENT_NAMES, AudioRequest, EventEnvelope
from .navigation import FocusSample, HighlightState, NavCursor, current_focus
from .peaks import PeakSet, detect_peaks
from .regions import RegionBuffer, aggregate_mean, export_buffer, playback_plan, sequence_order
from .render import (
    DEFAULT_SAMPLE_RATE,
    ImpulseResponse,
    RenderedAudio,
    decode_wav,
    encode_wav,
    generate_impulse_response,
    render_plan,
    render_tone,
)
from .session import SessionScript, Transcript, load_dataset, run_script
from .sonify import AudioParams, map_depth, map_pan, map_pitch, params_for, special_cues

__all__ = [
    "AudioParams",
    "AudioRequest",
    "BUILTIN_DATASETS",
    "DEFAULT_SAMPLE_RATE",
    "DatasetStats",
    "Engine",
    "EngineConfig",
    "EVENT_NAMES",
    "EventEnvelope",
    "FocusSample",
    "GridModel",
    "HighlightState",
    "ImpulseResponse",
    "NavCursor",
    "PeakSet",
    "RegionBuffer",
    "RenderedAudio",
    "SalienceConfig",
    "SessionScript",
    "SonificationConfig",
    "StepResult",
    "SurfaceDataset",
    "Transcript",
    "aggregate_mean",
    "build_grid",
    "compute_stats",
    "current_focus",
    "decode_wav",
    "detect_peaks",
    "encode_wav",
    "export_buffer",
    "export_dataset",
    "generate_impulse_response",
    "generate_synthetic",
    "load_config",
    "load_dataset",
    "map_depth",
    "map_pan",
    "map_pitch",
    "normalize",
    "params_for",
    "parse_dataset",
    "playback_plan",
    "render_plan",
    "render_tone",
    "run_script",
    "sequence_order",
    "special_cues",
]
