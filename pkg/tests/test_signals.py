import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.signal import chirp as scipy_chirp

from wavedet.signals import (
    ChirpSpec,
    NyquistError,
    ToneSpec,
    VoltageSequence,
    gen_chirp,
    gen_dc,
    gen_tone,
)


@pytest.mark.parametrize(
    "level, n, fs, expected",
    [
        (2.9, 4, 20e3, [2.9, 2.9, 2.9, 2.9]),
        (0.0, 1, 1.0, [0.0]),
        (1.65, 3, 20e3, [1.65, 1.65, 1.65]),
    ],
)
def test_gen_dc(level, n, fs, expected):
    seq = gen_dc(level, n, fs)
    assert seq.samples.tolist() == expected
    assert seq.sample_rate == fs


@pytest.mark.parametrize("n, fs", [(0, 1.0), (3, 0.0), (3, -5.0)])
def test_gen_dc_rejects(n, fs):
    with pytest.raises(ValueError):
        gen_dc(1.0, n, fs)


def test_tone_first_sample_is_bias():
    seq = gen_tone(ToneSpec(6000, 1.25, 1.65), 20e3, 0.01)
    assert seq.samples[0] == 1.65
    assert len(seq) == 200


def test_tone_quarter_period_cycle():
    seq = gen_tone(ToneSpec(5000, 1.0, 1.65), 20e3, 8 / 20e3)
    np.testing.assert_allclose(seq.samples, [1.65, 2.65, 1.65, 0.65] * 2, atol=1e-12)


def test_tone_nyquist_violation():
    with pytest.raises(NyquistError):
        gen_tone(ToneSpec(6000, 1.25, 1.65), 11e3, 0.01)
    with pytest.raises(NyquistError):
        gen_tone(ToneSpec(10e3), 20e3, 0.01)


@pytest.mark.parametrize(
    "kwargs", [dict(amplitude=-0.1), dict(amplitude=2.0, dc_bias=1.65), dict(amplitude=1.0, dc_bias=0.5)]
)
def test_tone_spec_window(kwargs):
    with pytest.raises(ValueError):
        ToneSpec(1000, **kwargs)


def test_full_scale_tone_spans_adc_window():
    seq = gen_tone(ToneSpec(5000, 1.25, 1.65), 20e3, 1e-3)
    assert seq.samples.max() == pytest.approx(2.9, abs=1e-12)
    assert seq.samples.min() == pytest.approx(0.4, abs=1e-12)


def test_zero_chirp_is_constant():
    seq = gen_chirp(ChirpSpec(0, 0, 0.01, 1.0, 1.65), 20e3)
    assert np.all(seq.samples == 1.65)


def test_chirp_instantaneous_frequency():
    spec = ChirpSpec(1000, 9000, 1.0)
    assert spec.instantaneous_frequency(0.625) == pytest.approx(6000)
    assert spec.crossing_time(6000) == pytest.approx(0.625)
    assert spec.crossing_time(200) is None


def test_chirp_against_scipy():
    spec = ChirpSpec(500, 9500, 0.05, 1.25, 1.65)
    seq = gen_chirp(spec, 20e3)
    t = seq.times
    ref = 1.65 + 1.25 * scipy_chirp(t, f0=500, t1=0.05, f1=9500, method="linear", phi=-90)
    np.testing.assert_allclose(seq.samples, ref, atol=1e-9)


def test_degenerate_chirp_matches_tone():
    chirp = gen_chirp(ChirpSpec(6000, 6000, 0.05), 20e3)
    tone = gen_tone(ToneSpec(6000), 20e3, 0.05)
    np.testing.assert_allclose(chirp.samples, tone.samples, atol=1e-12, rtol=0)


def test_chirp_nyquist():
    with pytest.raises(NyquistError):
        gen_chirp(ChirpSpec(500, 10500, 1.0), 20e3)


def test_chirp_spec_validation():
    with pytest.raises(ValueError):
        ChirpSpec(0, 100, 0.0)
    with pytest.raises(ValueError):
        ChirpSpec(-1, 100, 1.0)


def test_voltage_sequence_is_read_only():
    seq = VoltageSequence([1.0, 2.0], 10.0)
    with pytest.raises(ValueError):
        seq.samples[0] = 3.0
    with pytest.raises(ValueError):
        VoltageSequence([1.0], 0)


@settings(max_examples=50, deadline=None)
@given(
    f=st.floats(1, 9000),
    amp=st.floats(0, 1.25),
    phase=st.floats(-np.pi, np.pi),
    f_end=st.floats(0, 9000),
)
def test_samples_stay_in_envelope(f, amp, phase, f_end):
    tone = gen_tone(ToneSpec(f, amp, 1.65, phase), 20e3, 0.01)
    chirp = gen_chirp(ChirpSpec(f, f_end, 0.01, amp, 1.65), 20e3)
    for s in (tone.samples, chirp.samples):
        assert s.min() >= 1.65 - amp - 1e-12
        assert s.max() <= 1.65 + amp + 1e-12
