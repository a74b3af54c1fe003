"""Offline synthesis of audio parameters into stereo PCM.

This renderer mirrors the live signal chain exactly: oscillator, short
attack/release envelope, equal-power panning, one-pole lowpass, then a
pre-delayed convolution reverb mixed wet against dry. Everything is
deterministic for a given (params, sample rate, impulse response), so
rendered buffers can serve as golden files.

Convolution runs through FFT for speed; an exactness test keeps it within
1e-6 of direct convolution, which remains available for verification.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import BadSampleRateError
from .sonify import AudioParams, SINE, SQUARE, TRIANGLE, params_for
from .config import SonificationConfig
from .regions import PlaybackPlan

DEFAULT_SAMPLE_RATE = 48_000
IR_SECONDS = 2.2
IR_DECAY_POWER = 3.5
EDGE_RAMP_S = 0.005  # attack/release, just enough to kill clicks
MIN_SAMPLE_RATE = 8_000


@dataclass(frozen=True)
class RenderedAudio:
    """Stereo float32 frames in [-1, 1]."""

    sample_rate_hz: int
    frames: np.ndarray  # shape (2, n), float32

    def __post_init__(self) -> None:
        if self.frames.ndim != 2 or self.frames.shape[0] != 2:
            raise ValueError("frames must have shape (2, n)")
        if self.frames.dtype != np.float32:
            raise ValueError("frames must be float32")

    @property
    def n_frames(self) -> int:
        return int(self.frames.shape[1])

    def raw_float32(self) -> bytes:
        """Interleaved little-endian float32 dump for analysis tooling."""
        return self.frames.T.astype("<f4").tobytes()


@dataclass(frozen=True)
class ImpulseResponse:
    sample_rate_hz: int
    channels: np.ndarray  # shape (2, length_frames), float64

    @property
    def length_frames(self) -> int:
        return int(self.channels.shape[1])


def generate_impulse_response(sample_rate: int, seed: int = 0) -> ImpulseResponse:
    """Seeded stereo noise under a (1 - n/(N-1))^3.5 decay envelope.

    The two channels are decorrelated (independent noise) so the reverb
    has width. Each channel is normalized to unit energy, which keeps the
    wet path at roughly the dry path's level at full mix.
    """
    if sample_rate < MIN_SAMPLE_RATE:
        raise BadSampleRateError(f"sample rate {sample_rate} below {MIN_SAMPLE_RATE}")
    n = round(IR_SECONDS * sample_rate)
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-1.0, 1.0, size=(2, n))
    envelope = (1.0 - np.arange(n) / (n - 1)) ** IR_DECAY_POWER
    channels = noise * envelope
    for ch in range(2):
        norm = math.sqrt(float(np.sum(channels[ch] ** 2)))
        channels[ch] /= norm
    return ImpulseResponse(sample_rate, channels)


def _oscillator(params: AudioParams, sample_rate: int) -> np.ndarray:
    n = round(params.dur_s * sample_rate)
    t = np.arange(n) / sample_rate
    if params.sweep_to_hz is None:
        phase = 2.0 * np.pi * params.freq_hz * t
    else:
        # Linear frequency sweep: phase is the integral of f(t).
        rate = (params.sweep_to_hz - params.freq_hz) / params.dur_s
        phase = 2.0 * np.pi * (params.freq_hz * t + 0.5 * rate * t * t)
    if params.waveform == SINE:
        wave = np.sin(phase)
    elif params.waveform == TRIANGLE:
        wave = (2.0 / np.pi) * np.arcsin(np.sin(phase))
    elif params.waveform == SQUARE:
        wave = np.sign(np.sin(phase))
        wave[wave == 0.0] = 1.0
    else:  # pragma: no cover - AudioParams validates the waveform
        raise ValueError(params.waveform)
    return wave


def _edge_envelope(n: int, sample_rate: int) -> np.ndarray:
    ramp = min(round(EDGE_RAMP_S * sample_rate), n // 2)
    env = np.ones(n)
    if ramp > 0:
        env[:ramp] = np.linspace(0.0, 1.0, ramp, endpoint=False)
        env[n - ramp :] = np.linspace(1.0, 0.0, ramp)
    return env


def _one_pole_lowpass(signal: np.ndarray, cutoff_hz: float, sample_rate: int) -> np.ndarray:
    # scipy.signal import is deferred: it costs ~0.9 s and the stats/peaks
    # CLI paths never render audio.
    from scipy.signal import lfilter

    alpha = 1.0 - math.exp(-2.0 * math.pi * cutoff_hz / sample_rate)
    return lfilter([alpha], [1.0, -(1.0 - alpha)], signal)


def _equal_power_gains(pan: float) -> tuple[float, float]:
    theta = (pan + 1.0) * math.pi / 4.0
    return math.cos(theta), math.sin(theta)


def direct_convolve(signal: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    """Reference convolution; output length len(signal) + len(kernel) - 1."""
    return np.convolve(signal, kernel)


def _mix_buffer(params: AudioParams, sample_rate: int, ir: ImpulseResponse) -> np.ndarray:
    """Render one tone into a float64 stereo buffer including the reverb tail."""
    from scipy.signal import fftconvolve

    mono = _oscillator(params, sample_rate)
    n = len(mono)
    mono = mono * _edge_envelope(n, sample_rate) * params.gain
    mono = _one_pole_lowpass(mono, params.lowpass_hz, sample_rate)

    left_gain, right_gain = _equal_power_gains(params.pan)
    dry = np.vstack([mono * left_gain, mono * right_gain])

    predelay = round(params.predelay_ms / 1000.0 * sample_rate)
    total = n + predelay + ir.length_frames - 1
    out = np.zeros((2, total))
    out[:, :n] += (1.0 - params.wet) * dry
    if params.wet > 0.0:
        for ch in range(2):
            tail = fftconvolve(dry[ch], ir.channels[ch])
            out[ch, predelay : predelay + len(tail)] += params.wet * tail
    return out


def render_tone(
    params: AudioParams, sample_rate: int = DEFAULT_SAMPLE_RATE, ir: ImpulseResponse | None = None
) -> RenderedAudio:
    if ir is None:
        ir = generate_impulse_response(sample_rate)
    if ir.sample_rate_hz != sample_rate:
        raise ValueError("impulse response sample rate mismatch")
    out = _mix_buffer(params, sample_rate, ir)
    return RenderedAudio(sample_rate, np.clip(out, -1.0, 1.0).astype(np.float32))


def render_plan(
    plan: PlaybackPlan,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
    ir: ImpulseResponse | None = None,
    sound: SonificationConfig | None = None,
) -> RenderedAudio:
    """Mix a playback plan's tones at their start offsets.

    The mixed output is peak-limited to [-1, 1]; overlap never errors.
    """
    if ir is None:
        ir = generate_impulse_response(sample_rate)
    if not plan:
        return RenderedAudio(sample_rate, np.zeros((2, 0), dtype=np.float32))

    pieces = []
    for entry in plan:
        params = params_for(entry.focus, entry.dur_s, sound)
        offset = round(entry.start_s * sample_rate)
        pieces.append((offset, _mix_buffer(params, sample_rate, ir)))

    total = max(offset + buf.shape[1] for offset, buf in pieces)
    out = np.zeros((2, total))
    for offset, buf in pieces:
        out[:, offset : offset + buf.shape[1]] += buf
    return RenderedAudio(sample_rate, np.clip(out, -1.0, 1.0).astype(np.float32))


class AudioMixer:
    """Accumulates tones at absolute frame offsets into one master buffer."""

    def __init__(self, sample_rate: int = DEFAULT_SAMPLE_RATE) -> None:
        self.sample_rate = sample_rate
        self._pieces: list[tuple[int, np.ndarray]] = []

    def add_tone(self, params: AudioParams, at_frame: int, ir: ImpulseResponse) -> None:
        self._pieces.append((at_frame, _mix_buffer(params, self.sample_rate, ir)))

    def mixdown(self) -> RenderedAudio:
        if not self._pieces:
            return RenderedAudio(self.sample_rate, np.zeros((2, 0), dtype=np.float32))
        total = max(off + buf.shape[1] for off, buf in self._pieces)
        out = np.zeros((2, total))
        for off, buf in self._pieces:
            out[:, off : off + buf.shape[1]] += buf
        return RenderedAudio(self.sample_rate, np.clip(out, -1.0, 1.0).astype(np.float32))


def encode_wav(audio: RenderedAudio) -> bytes:
    """RIFF/WAVE, IEEE float32, stereo; decode(encode(a)) is bit-exact."""
    data = audio.frames.T.astype("<f4").tobytes()
    channels = 2
    bits = 32
    block_align = channels * bits // 8
    byte_rate = audio.sample_rate_hz * block_align

    fmt = struct.pack(
        "<HHIIHH", 3, channels, audio.sample_rate_hz, byte_rate, block_align, bits
    )
    fact = struct.pack("<I", audio.n_frames)
    body = (
        b"WAVE"
        + b"fmt " + struct.pack("<I", len(fmt)) + fmt
        + b"fact" + struct.pack("<I", len(fact)) + fact
        + b"data" + struct.pack("<I", len(data)) + data
    )
    return b"RIFF" + struct.pack("<I", len(body)) + body


def decode_wav(blob: bytes) -> RenderedAudio:
    if blob[:4] != b"RIFF" or blob[8:12] != b"WAVE":
        raise ValueError("not a RIFF/WAVE stream")
    pos = 12
    fmt = None
    data = None
    while pos + 8 <= len(blob):
        chunk_id = blob[pos : pos + 4]
        (size,) = struct.unpack_from("<I", blob, pos + 4)
        payload = blob[pos + 8 : pos + 8 + size]
        if chunk_id == b"fmt ":
            fmt = struct.unpack("<HHIIHH", payload[:16])
        elif chunk_id == b"data":
            data = payload
        pos += 8 + size + (size & 1)
    if fmt is None or data is None:
        raise ValueError("missing fmt or data chunk")
    audio_format, channels, sample_rate, _rate, _block, bits = fmt
    if audio_format != 3 or bits != 32 or channels != 2:
        raise ValueError("only stereo float32 WAV is supported")
    frames = np.frombuffer(data, dtype="<f4").reshape(-1, 2).T
    return RenderedAudio(sample_rate, np.ascontiguousarray(frames))
