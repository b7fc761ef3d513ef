"""Streaming complex FIR detector, magnitude-squared response and LED thresholds.

The fixed path mirrors the hardware: a tap line of 14-bit samples (newest in
slot 0), two integer dot products against the quantized real/imaginary
coefficients, and ``real**2 + imag**2`` as the response.  Everything is
computed with exact integers; register widths are checked, never wrapped.

The response register width defaults to what the bank actually needs (see
``required_response_bits``).  The LED comparison looks at the top 18 bits of
that register and at the top 16 bits of each threshold, so the 16-bit
threshold lines up with bits 17..2 of the 18-bit response window.  With a
50-bit register this is bits 49..32 of the response against thresholds with
their 34 low bits removed.
"""
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .frontend import DEFAULT_ADC, AdcConfig, sample_stream
from .quantize import Q14_MIN, Q14CoefficientBank
from .signals import ToneSpec, gen_tone
from .wavelets import FloatCoefficientBank

HW_ACCUMULATOR_BITS = 33
HW_RESPONSE_BITS = 50
COMPARE_BITS = 18
THRESHOLD_BITS = 16
LED_COUNT = 8
CALIBRATION_PHASES = 8

_SAMPLE_MAG = -Q14_MIN  # 8192, largest |sample|


class CalibrationError(ValueError):
    pass


def _ceil_log2(v):
    return (v - 1).bit_length()


def _abs_sums(bank):
    return int(np.abs(bank.real).sum()), int(np.abs(bank.imag).sum())


def required_accumulator_bits(bank: Q14CoefficientBank):
    """Signed width that holds either dot product for any 14-bit input."""
    s = max(_abs_sums(bank))
    if s == 0:
        return 1
    return _ceil_log2(_SAMPLE_MAG * s) + 1


def max_mag_sq_bound(bank: Q14CoefficientBank):
    re, im = _abs_sums(bank)
    return (_SAMPLE_MAG * re) ** 2 + (_SAMPLE_MAG * im) ** 2


def required_response_bits(bank: Q14CoefficientBank):
    """Unsigned width that holds the magnitude-squared response for any input."""
    return max(max_mag_sq_bound(bank).bit_length(), COMPARE_BITS)


@dataclass(frozen=True)
class Response:
    mag_sq: int
    real_part: int = 0
    imag_part: int = 0


def _mag(r):
    return r.mag_sq if isinstance(r, Response) else int(r)


class DetectorState:
    """Tap line plus accumulators for one sample stream.

    ``taps[i]`` holds the sample pushed ``i`` steps ago, so each push
    evaluates ``sum(x[n - i] * w[i])``.
    """

    def __init__(self, bank: Q14CoefficientBank, accumulator_bits=None, response_bits=None):
        self.bank = bank
        self.accumulator_bits = (
            required_accumulator_bits(bank) if accumulator_bits is None else accumulator_bits
        )
        self.response_bits = (
            required_response_bits(bank) if response_bits is None else response_bits
        )
        self.taps = deque([0] * bank.tap_count, maxlen=bank.tap_count)
        self._re = [int(c) for c in bank.real]
        self._im = [int(c) for c in bank.imag]

    def _check(self, real, imag, mag_sq):
        lim = 1 << (self.accumulator_bits - 1)
        for part in (real, imag):
            if not -lim <= part < lim:
                raise OverflowError(
                    f"accumulator value {part} exceeds {self.accumulator_bits}-bit signed range"
                )
        if mag_sq >= 1 << self.response_bits:
            raise OverflowError(f"response {mag_sq} exceeds {self.response_bits} bits")

    def push(self, sample):
        self.taps.appendleft(int(sample))
        real = sum(x * c for x, c in zip(self.taps, self._re))
        imag = sum(x * c for x, c in zip(self.taps, self._im))
        mag_sq = real * real + imag * imag
        self._check(real, imag, mag_sq)
        return Response(mag_sq, real, imag)

    def process(self, samples):
        """Push a block of samples; returns (real, imag, mag_sq) arrays.

        ``mag_sq`` is an object array of Python ints.  Tap state carries
        over exactly as if ``push`` had been called per sample.
        """
        samples = np.asarray(samples, dtype=np.int64)
        if len(samples) == 0:
            empty = np.zeros(0, dtype=np.int64)
            return empty, empty.copy(), np.zeros(0, dtype=object)
        n_taps = self.bank.tap_count
        history = np.array(list(self.taps)[-2::-1], dtype=np.int64)  # N-1 newest, oldest first
        ext = np.concatenate([history, samples])
        if self.accumulator_bits <= 62:
            real = np.convolve(ext, self.bank.real, mode="valid")
            imag = np.convolve(ext, self.bank.imag, mode="valid")
        else:
            real = _object_convolve(ext, self.bank.real)
            imag = _object_convolve(ext, self.bank.imag)
        real_o = real.astype(object)
        imag_o = imag.astype(object)
        mag_sq = real_o * real_o + imag_o * imag_o
        lim = 1 << (self.accumulator_bits - 1)
        for part in (real_o, imag_o):
            if max(part) >= lim or min(part) < -lim:
                raise OverflowError(f"accumulator exceeds {self.accumulator_bits}-bit signed range")
        if max(mag_sq) >= 1 << self.response_bits:
            raise OverflowError(f"response exceeds {self.response_bits} bits")
        self.taps.extendleft(int(x) for x in ext[-n_taps:])
        return real, imag, mag_sq

    def reset(self):
        self.taps.extend([0] * self.bank.tap_count)


def _object_convolve(ext, coeffs):
    n = len(coeffs)
    x = ext.astype(object)
    c = [int(v) for v in coeffs]
    return np.array(
        [sum(x[k + n - 1 - i] * c[i] for i in range(n)) for k in range(len(x) - n + 1)],
        dtype=object,
    )


def push_sample(state: DetectorState, sample):
    return state.push(sample)


def clip_response(r, response_bits=HW_RESPONSE_BITS):
    """Top 18 bits of the response register (bits 49..32 for a 50-bit register)."""
    return (_mag(r) >> (response_bits - COMPARE_BITS)) & ((1 << COMPARE_BITS) - 1)


@dataclass(frozen=True)
class ThresholdBank:
    """Eight LED thresholds centred in the eight equal slices of [0, M]."""

    max_response: int
    response_bits: int = HW_RESPONSE_BITS
    full: tuple = field(init=False)
    clipped: tuple = field(init=False)

    def __post_init__(self):
        m = int(self.max_response)
        if m <= 0:
            raise CalibrationError("max response must be positive")
        if m >= 1 << self.response_bits:
            raise ValueError(f"max response {m} does not fit {self.response_bits} bits")
        full = tuple((2 * k - 1) * m // 16 for k in range(1, LED_COUNT + 1))
        shift = self.response_bits - THRESHOLD_BITS
        object.__setattr__(self, "max_response", m)
        object.__setattr__(self, "full", full)
        object.__setattr__(self, "clipped", tuple(t >> shift for t in full))

    @property
    def compare_values(self):
        """Clipped thresholds aligned to the 18-bit response window."""
        return tuple(c << (COMPARE_BITS - THRESHOLD_BITS) for c in self.clipped)


def led_level(r, t: ThresholdBank):
    """Number of LEDs lit: thresholds strictly exceeded by the clipped response."""
    clipped = clip_response(r, t.response_bits)
    return sum(clipped > c for c in t.compare_values)


def led_level_full(r, t: ThresholdBank):
    """Same decision on the unclipped values."""
    m = _mag(r)
    return sum(m > f for f in t.full)


def calibration_samples(bank: Q14CoefficientBank):
    return 3 * bank.tap_count


def calibrate_max_response(bank: Q14CoefficientBank, frontend_cfg: AdcConfig = DEFAULT_ADC, response_bits=None):
    """Run full-scale center-frequency tones through the 14-bit pipeline.

    The largest response over eight starting phases becomes M.
    """
    spec = bank.source
    if spec is None:
        raise CalibrationError("bank has no wavelet spec to calibrate against")
    if not (np.any(bank.real) or np.any(bank.imag)):
        raise CalibrationError("all-zero coefficient bank")
    n = calibration_samples(bank)
    peak = 0
    for k in range(CALIBRATION_PHASES):
        tone = ToneSpec(
            spec.center_freq,
            amplitude=frontend_cfg.full_scale_amplitude,
            dc_bias=frontend_cfg.v_ref,
            phase=2 * math.pi * k / CALIBRATION_PHASES,
        )
        codes = sample_stream(gen_tone(tone, spec.sample_rate, n / spec.sample_rate), frontend_cfg)
        state = DetectorState(bank, response_bits=response_bits)
        _, _, mag_sq = state.process(codes)
        peak = max(peak, max(mag_sq))
    if peak == 0:
        raise CalibrationError("calibration tone produced no response")
    bits = required_response_bits(bank) if response_bits is None else response_bits
    return ThresholdBank(peak, bits)


def float_response(bank: FloatCoefficientBank, signal):
    """Magnitude-squared of the causal complex convolution, float64 throughout."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1 or len(x) < 1:
        raise ValueError("signal must be a non-empty 1-D sequence")
    y = np.convolve(x, bank.complex)[: len(x)]
    return y.real**2 + y.imag**2
