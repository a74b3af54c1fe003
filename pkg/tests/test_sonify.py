import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sonigrid.config import SonificationConfig
from sonigrid.errors import OutOfRangeError
from sonigrid.navigation import FocusSample
from sonigrid.sonify import (
    AudioParams,
    map_depth,
    map_pan,
    map_pitch,
    params_for,
    special_cues,
    waveform_for,
)


def sample(x_norm, y_norm, z_norm):
    return FocusSample(0.0, 0.0, 0.0, x_norm, y_norm, z_norm, "rectangle")


unit = st.floats(0.0, 1.0, allow_nan=False)


# --------------------------------------------------------------- endpoints

def test_pitch_endpoints():
    assert map_pitch(0.0) == 200.0
    assert map_pitch(1.0) == 800.0
    assert map_pitch(0.5) == pytest.approx(400.0)


def test_pan_endpoints():
    assert map_pan(0.0) == -1.0
    assert map_pan(1.0) == 1.0
    assert map_pan(0.5) == 0.0


def test_depth_endpoints():
    assert map_depth(0.0) == (1.0, 0.20, 10.0, 6500.0)
    assert map_depth(1.0) == (0.3, 0.95, 90.0, 2000.0)
    gain, wet, predelay, lowpass = map_depth(0.5)
    assert gain == pytest.approx(0.65)
    assert wet == pytest.approx(0.575)
    assert predelay == pytest.approx(50.0)
    assert lowpass == pytest.approx(4250.0)


def test_params_for_compositions():
    near = params_for(sample(0.0, 0.0, 0.0))
    assert near.freq_hz == 200.0
    assert near.waveform == "sine"
    assert near.pan == -1.0
    assert near.gain == 1.0
    assert near.wet == 0.20

    far = params_for(sample(1.0, 1.0, 1.0))
    assert far.freq_hz == 800.0
    assert far.waveform == "square"
    assert far.pan == 1.0
    assert far.gain == pytest.approx(0.3)
    assert far.wet == 0.95

    mid = params_for(sample(0.5, 0.5, 0.5))
    assert mid.freq_hz == pytest.approx(400.0)
    assert mid.waveform == "triangle"
    assert mid.pan == 0.0


def test_special_cues():
    ref = special_cues("reference")
    assert ref.freq_hz == 300.0
    assert ref.waveform == "sine"
    assert ref.pan == 0.0
    assert ref.dur_s == 0.5
    assert ref.sweep_to_hz is None

    pos = special_cues("peak_positive")
    assert pos.freq_hz == 800.0
    assert pos.sweep_to_hz == pytest.approx(1200.0)
    assert pos.dur_s == 0.25

    neg = special_cues("peak_negative")
    assert neg.freq_hz == 400.0
    assert neg.sweep_to_hz == pytest.approx(600.0)

    click = special_cues("boundary")
    assert click.freq_hz == 150.0
    assert click.dur_s == pytest.approx(0.1)

    with pytest.raises(ValueError):
        special_cues("doorbell")


# ------------------------------------------------------------ monotonicity

def test_monotonicity_on_random_pairs():
    rng = np.random.default_rng(2024)
    for _ in range(1000):
        a, b = sorted(rng.uniform(0.0, 1.0, 2))
        if a == b:
            continue
        assert map_pitch(a) < map_pitch(b)
        assert map_pan(a) < map_pan(b)
        gain_a, wet_a, pre_a, low_a = map_depth(a)
        gain_b, wet_b, pre_b, low_b = map_depth(b)
        assert gain_a > gain_b
        assert low_a > low_b
        assert wet_a < wet_b
        assert pre_a < pre_b


# ------------------------------------------------------------------ ranges

@given(unit, unit, unit)
def test_outputs_respect_ranges(x, y, z):
    p = params_for(sample(x, y, z))
    assert 200.0 <= p.freq_hz <= 800.0
    assert -1.0 <= p.pan <= 1.0
    assert 0.0 <= p.gain <= 1.0
    assert 0.0 <= p.wet <= 1.0
    assert 10.0 <= p.predelay_ms <= 90.0
    assert 2000.0 <= p.lowpass_hz <= 6500.0
    assert p.waveform in ("sine", "triangle", "square")


def test_out_of_range_rejected():
    for bad in (-0.001, 1.001, 2.0):
        with pytest.raises(OutOfRangeError):
            map_pitch(bad)
        with pytest.raises(OutOfRangeError):
            map_pan(bad)
        with pytest.raises(OutOfRangeError):
            map_depth(bad)


# --------------------------------------------------------------- waveforms

@given(unit)
def test_waveform_partition_no_gaps(y):
    w = waveform_for(sample(0.0, y, 0.0))
    if y < 1.0 / 3.0:
        assert w == "sine"
    elif y < 2.0 / 3.0:
        assert w == "triangle"
    else:
        assert w == "square"


def test_waveform_x_position_driver():
    cfg = SonificationConfig(waveform_driver="x_position")
    assert waveform_for(sample(0.1, 0.9, 0.0), cfg) == "sine"
    assert waveform_for(sample(0.5, 0.9, 0.0), cfg) == "triangle"
    assert waveform_for(sample(0.9, 0.1, 0.0), cfg) == "square"


def test_params_for_is_pure():
    s = sample(0.25, 0.5, 0.75)
    assert params_for(s) == params_for(s)
    assert params_for(s, 0.42).dur_s == 0.42


def test_audio_params_validation():
    with pytest.raises(ValueError):
        AudioParams(440, "sine", pan=2.0, gain=1, wet=0, predelay_ms=0, lowpass_hz=1000, dur_s=1)
    with pytest.raises(ValueError):
        AudioParams(440, "sawtooth", pan=0, gain=1, wet=0, predelay_ms=0, lowpass_hz=1000, dur_s=1)
