"""Mapping from focus samples and cues to audio parameters.

Every psychoacoustic number lives in SonificationConfig; this module turns
normalized coordinates into an AudioParams record that any backend (the
offline renderer or a live web player) can realize identically.

Mappings, for inputs in [0, 1]:
  pitch   200 Hz * 4^y_norm  (logarithmic: equal height steps sound equal)
  pan     2 * x_norm - 1     (full left to full right)
  depth   linear wet 0.20->0.95, pre-delay 10->90 ms, lowpass 6500->2000 Hz,
          gain 1.0->0.3; distance is mostly carried by reverb and damping,
          with gain kept clearly audible
  timbre  sine / triangle / square over height thirds (configurable to
          follow X position instead)
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .config import SonificationConfig
from .errors import OutOfRangeError
from .events import (
    AUDIO_BOUNDARY,
    AUDIO_PEAK_NEGATIVE,
    AUDIO_PEAK_POSITIVE,
    AUDIO_REFERENCE,
)
from .navigation import FocusSample

SINE = "sine"
TRIANGLE = "triangle"
SQUARE = "square"
WAVEFORMS = (SINE, TRIANGLE, SQUARE)


@dataclass(frozen=True)
class AudioParams:
    """The sonification contract between the engine and any audio backend."""

    freq_hz: float
    waveform: str
    pan: float
    gain: float
    wet: float
    predelay_ms: float
    lowpass_hz: float
    dur_s: float
    sweep_to_hz: Optional[float] = None

    def __post_init__(self) -> None:
        if self.waveform not in WAVEFORMS:
            raise ValueError(f"unknown waveform {self.waveform!r}")
        if not -1.0 <= self.pan <= 1.0:
            raise ValueError(f"pan {self.pan} outside [-1, 1]")
        if not 0.0 <= self.gain <= 1.0:
            raise ValueError(f"gain {self.gain} outside [0, 1]")
        if not 0.0 <= self.wet <= 1.0:
            raise ValueError(f"wet {self.wet} outside [0, 1]")

    def as_payload(self) -> dict:
        out = {
            "freq_hz": self.freq_hz,
            "waveform": self.waveform,
            "pan": self.pan,
            "gain": self.gain,
            "wet": self.wet,
            "predelay_ms": self.predelay_ms,
            "lowpass_hz": self.lowpass_hz,
            "dur_s": self.dur_s,
        }
        if self.sweep_to_hz is not None:
            out["sweep_to_hz"] = self.sweep_to_hz
        return out


def _check_unit(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise OutOfRangeError(name, value)


def map_pitch(y_norm: float, cfg: SonificationConfig | None = None) -> float:
    """Height to frequency, logarithmic between the configured endpoints."""
    _check_unit("y_norm", y_norm)
    c = cfg or SonificationConfig()
    return c.pitch_min_hz * (c.pitch_max_hz / c.pitch_min_hz) ** y_norm


def map_pan(x_norm: float) -> float:
    _check_unit("x_norm", x_norm)
    return 2.0 * x_norm - 1.0


def map_depth(
    z_norm: float, cfg: SonificationConfig | None = None
) -> tuple[float, float, float, float]:
    """Depth to (gain, wet, predelay_ms, lowpass_hz), all linear."""
    _check_unit("z_norm", z_norm)
    c = cfg or SonificationConfig()

    def lerp(near: float, far: float) -> float:
        # Two-sided form: exact at both endpoints, monotone in between.
        return near * (1.0 - z_norm) + far * z_norm

    return (
        lerp(c.gain_near, c.gain_far),
        lerp(c.wet_near, c.wet_far),
        lerp(c.predelay_near_ms, c.predelay_far_ms),
        lerp(c.lowpass_near_hz, c.lowpass_far_hz),
    )


def waveform_for(sample: FocusSample, cfg: SonificationConfig | None = None) -> str:
    """Timbre from height thirds (default) or X-position thirds."""
    c = cfg or SonificationConfig()
    driver = sample.y_norm if c.waveform_driver == "height" else sample.x_norm
    if driver < 1.0 / 3.0:
        return SINE
    if driver < 2.0 / 3.0:
        return TRIANGLE
    return SQUARE


def params_for(
    sample: FocusSample, dur_s: float | None = None, cfg: SonificationConfig | None = None
) -> AudioParams:
    """Compose the full mapping for one focus sample."""
    c = cfg or SonificationConfig()
    gain, wet, predelay, lowpass = map_depth(sample.z_norm, c)
    return AudioParams(
        freq_hz=map_pitch(sample.y_norm, c),
        waveform=waveform_for(sample, c),
        pan=map_pan(sample.x_norm),
        gain=gain,
        wet=wet,
        predelay_ms=predelay,
        lowpass_hz=lowpass,
        dur_s=c.data_tone_dur_s if dur_s is None else dur_s,
    )


def special_cues(kind: str, cfg: SonificationConfig | None = None) -> AudioParams:
    """Fixed cues: origin reference, peak sweeps, and the boundary click."""
    c = cfg or SonificationConfig()
    if kind == AUDIO_REFERENCE:
        return AudioParams(
            freq_hz=c.reference_hz,
            waveform=SINE,
            pan=0.0,
            gain=1.0,
            wet=c.wet_near,
            predelay_ms=c.predelay_near_ms,
            lowpass_hz=c.lowpass_near_hz,
            dur_s=c.reference_dur_s,
        )
    if kind in (AUDIO_PEAK_POSITIVE, AUDIO_PEAK_NEGATIVE):
        base = c.peak_positive_hz if kind == AUDIO_PEAK_POSITIVE else c.peak_negative_hz
        return AudioParams(
            freq_hz=base,
            waveform=SINE,
            pan=0.0,
            gain=1.0,
            wet=c.wet_near,
            predelay_ms=c.predelay_near_ms,
            lowpass_hz=c.lowpass_near_hz,
            dur_s=c.peak_dur_s,
            sweep_to_hz=base * c.peak_sweep_ratio,
        )
    if kind == AUDIO_BOUNDARY:
        return AudioParams(
            freq_hz=c.boundary_hz,
            waveform=SQUARE,
            pan=0.0,
            gain=0.8,
            wet=0.0,
            predelay_ms=c.predelay_near_ms,
            lowpass_hz=c.lowpass_near_hz,
            dur_s=c.boundary_dur_s,
        )
    raise ValueError(f"unknown cue kind {kind!r}")
