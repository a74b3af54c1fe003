"""Headless scripted sessions: keys in, transcript and audio out.

A session replays a timed key script through the engine, converts every
audio request into parameters, and renders the whole run into one stereo
buffer. Times are quantized to whole frames before anything is scheduled,
so two runs of the same script and seed are byte-identical and the outputs
can be committed as golden files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .config import EngineConfig
from .dataset import BUILTIN_DATASETS, SurfaceDataset, generate_synthetic, parse_dataset
from .engine import Engine, StepResult
from .errors import DatasetLoadError, SonigridError
from .events import (
    ANNOUNCE,
    AUDIO_BOUNDARY,
    AUDIO_BUFFER_PLAN,
    AUDIO_DATA,
    AUDIO_PEAK_NEGATIVE,
    AUDIO_PEAK_POSITIVE,
    AUDIO_REFERENCE,
    AUDIO_REPLAY,
)
from .render import (
    DEFAULT_SAMPLE_RATE,
    AudioMixer,
    RenderedAudio,
    generate_impulse_response,
)
from .sonify import params_for, special_cues


@dataclass(frozen=True)
class ScriptKey:
    key: str
    at_s: float


@dataclass(frozen=True)
class SessionScript:
    dataset_ref: str
    keys: tuple[ScriptKey, ...]
    seed: int = 0

    def __post_init__(self) -> None:
        times = [k.at_s for k in self.keys]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("script key times must be non-decreasing")

    @classmethod
    def from_json(cls, text: str) -> "SessionScript":
        raw = json.loads(text)
        return cls(
            dataset_ref=raw["dataset"],
            keys=tuple(ScriptKey(k["key"], float(k["at"])) for k in raw.get("keys", ())),
            seed=int(raw.get("seed", 0)),
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "SessionScript":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


@dataclass(frozen=True)
class TranscriptRecord:
    seq: int
    t_s: float
    name: str
    payload: dict


@dataclass
class Transcript:
    records: list[TranscriptRecord] = field(default_factory=list)

    def append(self, t_s: float, name: str, payload: dict) -> None:
        self.records.append(TranscriptRecord(len(self.records), t_s, name, payload))

    def to_jsonl(self) -> str:
        lines = [
            json.dumps(
                {"seq": r.seq, "t_s": r.t_s, "name": r.name, "payload": r.payload},
                sort_keys=True,
            )
            for r in self.records
        ]
        return "\n".join(lines) + ("\n" if lines else "")

    def names(self) -> list[str]:
        return [r.name for r in self.records]


def load_dataset(ref: str) -> SurfaceDataset:
    """Resolve a builtin name or CSV path; wraps all failures."""
    if ref in BUILTIN_DATASETS:
        return generate_synthetic(ref)
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DatasetLoadError(f"cannot read dataset {ref!r}: {exc}") from exc
    try:
        return parse_dataset(text, source_name=path.name)
    except SonigridError as exc:
        raise DatasetLoadError(f"cannot parse dataset {ref!r}: {exc}") from exc


class _Runner:
    def __init__(self, script: SessionScript, config: EngineConfig) -> None:
        self.config = config
        self.engine = Engine(load_dataset(script.dataset_ref), config)
        self.sample_rate = DEFAULT_SAMPLE_RATE
        self.ir = generate_impulse_response(self.sample_rate, script.seed)
        self.mixer = AudioMixer(self.sample_rate)
        self.transcript = Transcript()
        self.interval_frames = max(1, round(config.autoplay.interval_s * self.sample_rate))
        self.next_tick_frame: int | None = None

    def _record(self, result: StepResult, frame: int, tick: bool = False) -> None:
        t_s = frame / self.sample_rate
        for event in result.events:
            self.transcript.append(t_s, event.name, dict(event.payload))
        sound = self.config.sonification
        for request in result.audio:
            if request.kind in (AUDIO_DATA, AUDIO_REPLAY):
                dur = self.config.autoplay.tone_dur_s if tick else sound.data_tone_dur_s
                self.mixer.add_tone(params_for(request.focus, dur, sound), frame, self.ir)
            elif request.kind in (
                AUDIO_REFERENCE,
                AUDIO_PEAK_POSITIVE,
                AUDIO_PEAK_NEGATIVE,
                AUDIO_BOUNDARY,
            ):
                self.mixer.add_tone(special_cues(request.kind, sound), frame, self.ir)
            elif request.kind == AUDIO_BUFFER_PLAN:
                for entry in request.plan:
                    at = frame + round(entry.start_s * self.sample_rate)
                    self.mixer.add_tone(params_for(entry.focus, entry.dur_s, sound), at, self.ir)

    def _playing(self) -> bool:
        return self.engine.program is not None and self.engine.program.state == "playing"

    def _run_ticks_until(self, limit_frame: int | None) -> None:
        """Tick the sweep clock up to (not including) limit_frame."""
        while self._playing() and self.next_tick_frame is not None:
            if limit_frame is not None and self.next_tick_frame >= limit_frame:
                return
            frame = self.next_tick_frame
            result = self.engine.tick()
            self._record(result, frame, tick=True)
            self.next_tick_frame = frame + self.interval_frames
        self.next_tick_frame = None

    def run(self, script: SessionScript) -> tuple[Transcript, RenderedAudio]:
        for item in script.keys:
            frame = round(item.at_s * self.sample_rate)
            self._run_ticks_until(frame)
            was_playing = self._playing()
            try:
                result = self.engine.press(item.key)
            except SonigridError as exc:
                self.transcript.append(
                    frame / self.sample_rate,
                    ANNOUNCE,
                    {"text": f"Error: {exc}", "error": type(exc).__name__},
                )
                continue
            self._record(result, frame)
            if self._playing() and (not was_playing or self.next_tick_frame is None):
                self.next_tick_frame = frame + self.interval_frames
            elif not self._playing():
                self.next_tick_frame = None
        self._run_ticks_until(None)
        return self.transcript, self.mixer.mixdown()


def run_script(
    script: SessionScript, config: EngineConfig | None = None
) -> tuple[Transcript, RenderedAudio]:
    """Replay a script through the full engine; fully deterministic."""
    return _Runner(script, config or EngineConfig()).run(script)
