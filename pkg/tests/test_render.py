import numpy as np
import pytest

from sonigrid.config import SonificationConfig
from sonigrid.dataset import compute_stats
from sonigrid.errors import BadSampleRateError
from sonigrid.navigation import FocusSample
from sonigrid.regions import Bounds, RegionBuffer, playback_plan
from sonigrid.render import (
    DEFAULT_SAMPLE_RATE,
    AudioMixer,
    RenderedAudio,
    decode_wav,
    direct_convolve,
    encode_wav,
    generate_impulse_response,
    render_plan,
    render_tone,
)
from sonigrid.sonify import AudioParams

SR = DEFAULT_SAMPLE_RATE

DRY = SonificationConfig(wet_near=0.0, wet_far=0.0)


def tone(freq, dur=1.0, wet=0.0, pan=0.0, gain=1.0, waveform="sine", sweep=None):
    return AudioParams(
        freq_hz=freq,
        waveform=waveform,
        pan=pan,
        gain=gain,
        wet=wet,
        predelay_ms=10.0,
        lowpass_hz=6500.0,
        dur_s=dur,
        sweep_to_hz=sweep,
    )


@pytest.fixture(scope="module")
def ir():
    return generate_impulse_response(SR, seed=7)


def dominant_hz(frames: np.ndarray, sample_rate: int) -> float:
    mono = frames.astype(np.float64).sum(axis=0)
    spectrum = np.abs(np.fft.rfft(mono))
    return float(np.argmax(spectrum)) * sample_rate / len(mono)


# ------------------------------------------------------------- impulse IR

def test_ir_length_at_48k(ir):
    assert ir.length_frames == 105_600
    assert ir.length_frames == round(2.2 * SR)


def test_ir_envelope_endpoints(ir):
    n = ir.length_frames
    envelope = (1.0 - np.arange(n) / (n - 1)) ** 3.5
    assert envelope[0] == 1.0
    assert envelope[-1] == 0.0
    assert np.all(np.diff(envelope) <= 0)
    # The rendered channels end exactly silent and never exceed the start scale.
    assert ir.channels[0][-1] == 0.0 and ir.channels[1][-1] == 0.0


def test_ir_windowed_rms_non_increasing(ir):
    window = 4800
    for ch in range(2):
        chunks = ir.channels[ch][: (ir.length_frames // window) * window].reshape(-1, window)
        rms = np.sqrt((chunks**2).mean(axis=1))
        assert np.all(np.diff(rms) < 0)


def test_ir_same_seed_bit_identical():
    a = generate_impulse_response(SR, seed=42)
    b = generate_impulse_response(SR, seed=42)
    assert a.channels.tobytes() == b.channels.tobytes()
    c = generate_impulse_response(SR, seed=43)
    assert a.channels.tobytes() != c.channels.tobytes()


def test_ir_channels_decorrelated(ir):
    corr = np.corrcoef(ir.channels[0], ir.channels[1])[0, 1]
    assert abs(corr) < 0.05


def test_ir_rejects_low_sample_rate():
    with pytest.raises(BadSampleRateError):
        generate_impulse_response(4000)


# ------------------------------------------------------------ tone render

@pytest.mark.parametrize("freq", [200.0, 400.0, 800.0])
def test_spectral_peak_within_one_bin(freq, ir):
    audio = render_tone(tone(freq, dur=1.0, wet=0.0), SR, ir)
    bin_hz = SR / audio.n_frames
    assert abs(dominant_hz(audio.frames, SR) - freq) <= bin_hz


def test_full_left_pan_silences_right(ir):
    audio = render_tone(tone(300.0, wet=0.0, pan=-1.0), SR, ir)
    left_rms = np.sqrt(np.mean(audio.frames[0].astype(np.float64) ** 2))
    right_rms = np.sqrt(np.mean(audio.frames[1].astype(np.float64) ** 2))
    assert right_rms <= 0.01 * left_rms


def test_wet_mix_grows_tail_energy(ir):
    dry_end = round(1.0 * SR) + round(10.0 / 1000 * SR)
    quiet = render_tone(tone(300.0, wet=0.20), SR, ir)
    lush = render_tone(tone(300.0, wet=0.95), SR, ir)
    tail = lambda a: float(np.sum(a.frames.astype(np.float64)[:, dry_end:] ** 2))
    assert tail(lush) > tail(quiet)


def test_render_deterministic(ir):
    a = render_tone(tone(440.0, wet=0.5), SR, ir)
    b = render_tone(tone(440.0, wet=0.5), SR, ir)
    assert a.frames.tobytes() == b.frames.tobytes()


def test_gain_doubles_dry_rms(ir):
    lo = render_tone(tone(250.0, gain=0.2, wet=0.0), SR, ir)
    hi = render_tone(tone(250.0, gain=0.4, wet=0.0), SR, ir)
    rms = lambda a: np.sqrt(np.mean(a.frames.astype(np.float64) ** 2))
    assert rms(hi) / rms(lo) == pytest.approx(2.0, rel=1e-6)


def test_output_limited(ir):
    # Two loud overlapping tones cannot exceed the limiter.
    mixer = AudioMixer(SR)
    mixer.add_tone(tone(220.0, gain=1.0, waveform="square"), 0, ir)
    mixer.add_tone(tone(221.0, gain=1.0, waveform="square"), 10, ir)
    audio = mixer.mixdown()
    assert float(np.abs(audio.frames).max()) <= 1.0


def test_sweep_moves_spectral_peak(ir):
    swept = render_tone(tone(800.0, dur=0.25, wet=0.0, sweep=1200.0), SR, ir)
    peak = dominant_hz(swept.frames, SR)
    assert 800.0 < peak < 1200.0


def test_convolution_length_property():
    a = np.ones(100)
    b = np.ones(31)
    assert len(direct_convolve(a, b)) == 130


def test_fft_convolve_matches_direct():
    from scipy.signal import fftconvolve

    rng = np.random.default_rng(5)
    signal = rng.normal(size=4000)
    kernel = rng.normal(size=900)
    direct = direct_convolve(signal, kernel)
    fast = fftconvolve(signal, kernel)
    assert np.max(np.abs(direct - fast)) < 1e-6


def test_render_includes_reverb_tail(ir):
    audio = render_tone(tone(300.0, dur=0.5, wet=0.5), SR, ir)
    expected = round(0.5 * SR) + round(10.0 / 1000 * SR) + ir.length_frames - 1
    assert audio.n_frames == expected


# ------------------------------------------------------------------ plans

def make_buffer(n):
    items = tuple(
        FocusSample(float(i), 0.5, 0.0, 0.2, 0.5, 0.0, "rectangle") for i in range(n)
    )
    return RegionBuffer(bounds=Bounds(0, 0, 0, n - 1), items=items)


def last_audible_frame(audio: RenderedAudio) -> int:
    mono = np.abs(audio.frames.astype(np.float64)).max(axis=0)
    loud = np.nonzero(mono > 1e-9)[0]
    return int(loud[-1]) if len(loud) else -1


def test_sequential_plan_dry_span(gaussian_dataset, ir):
    stats = compute_stats(gaussian_dataset)
    _buffer, plan = playback_plan(make_buffer(4), stats, DRY)
    audio = render_plan(plan, SR, ir, DRY)
    expected = round((4 * 0.3 + 3 * 0.125) * SR)
    assert abs(last_audible_frame(audio) - expected) <= 1


def test_aggregated_plan_dry_span(gaussian_dataset, ir):
    stats = compute_stats(gaussian_dataset)
    buffer, _ = playback_plan(make_buffer(4), stats, DRY)
    _buffer, plan = playback_plan(buffer, stats, DRY)
    assert len(plan) == 1 and plan[0].aggregated
    audio = render_plan(plan, SR, ir, DRY)
    assert abs(last_audible_frame(audio) - round(1.0 * SR)) <= 1


def test_empty_plan_renders_nothing(ir):
    audio = render_plan((), SR, ir)
    assert audio.n_frames == 0


# -------------------------------------------------------------- WAV codec

def test_wav_minimal_file():
    silent = RenderedAudio(SR, np.zeros((2, 1), dtype=np.float32))
    blob = encode_wav(silent)
    assert blob[:4] == b"RIFF" and blob[8:12] == b"WAVE"
    assert len(blob) >= 44 + 8
    assert blob.endswith(b"\x00" * 8)  # one silent stereo float32 frame
    decoded = decode_wav(blob)
    assert decoded.n_frames == 1


def test_wav_round_trip_bit_exact():
    rng = np.random.default_rng(9)
    frames = rng.uniform(-1, 1, size=(2, 1234)).astype(np.float32)
    audio = RenderedAudio(SR, frames)
    decoded = decode_wav(encode_wav(audio))
    assert decoded.sample_rate_hz == SR
    assert decoded.frames.tobytes() == frames.tobytes()


def test_wav_sample_rate_at_standard_offset():
    audio = RenderedAudio(48_000, np.zeros((2, 4), dtype=np.float32))
    blob = encode_wav(audio)
    assert int.from_bytes(blob[24:28], "little") == 48_000


def test_raw_float32_dump():
    frames = np.array([[0.5, -0.5], [0.25, -0.25]], dtype=np.float32)
    audio = RenderedAudio(SR, frames)
    raw = audio.raw_float32()
    assert np.frombuffer(raw, dtype="<f4").tolist() == [0.5, 0.25, -0.5, -0.25]
