"""Analog-domain stimuli: DC levels, biased tones and linear chirps.

Sample ``n`` sits at ``t = n / fs``; the first sample is at ``t = 0``.
"""
from dataclasses import dataclass

import numpy as np

ABS_MAX_VOLTS = 3.3


class NyquistError(ValueError):
    """Requested frequency content cannot be represented at the sample rate."""


def _check_window(amplitude, dc_bias):
    if amplitude < 0:
        raise ValueError(f"amplitude must be non-negative, got {amplitude}")
    if dc_bias - amplitude < 0 or dc_bias + amplitude > ABS_MAX_VOLTS:
        raise ValueError(
            f"dc_bias {dc_bias} +/- amplitude {amplitude} leaves [0, {ABS_MAX_VOLTS}] V"
        )


@dataclass(frozen=True)
class ToneSpec:
    frequency: float
    amplitude: float = 1.25
    dc_bias: float = 1.65
    phase: float = 0.0

    def __post_init__(self):
        if self.frequency < 0:
            raise ValueError(f"frequency must be non-negative, got {self.frequency}")
        _check_window(self.amplitude, self.dc_bias)


@dataclass(frozen=True)
class ChirpSpec:
    """Linear sweep from ``f_start`` to ``f_end`` over ``duration`` seconds."""

    f_start: float
    f_end: float
    duration: float
    amplitude: float = 1.25
    dc_bias: float = 1.65

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")
        if self.f_start < 0 or self.f_end < 0:
            raise ValueError("chirp frequencies must be non-negative")
        _check_window(self.amplitude, self.dc_bias)

    def instantaneous_frequency(self, t):
        return self.f_start + (self.f_end - self.f_start) * np.asarray(t) / self.duration

    def crossing_time(self, freq):
        """Time at which the sweep passes through ``freq``, or None if it never does."""
        lo, hi = sorted((self.f_start, self.f_end))
        if not lo <= freq <= hi or self.f_start == self.f_end:
            return None
        return self.duration * (freq - self.f_start) / (self.f_end - self.f_start)


@dataclass(frozen=True)
class VoltageSequence:
    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        samples = np.array(self.samples, dtype=np.float64)
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self):
        return len(self.samples)

    @property
    def times(self):
        return np.arange(len(self.samples)) / self.sample_rate


def _n_samples(duration, fs):
    if duration <= 0:
        raise ValueError(f"duration must be positive, got {duration}")
    return max(1, int(round(duration * fs)))


def gen_dc(level, n, fs):
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if fs <= 0:
        raise ValueError(f"fs must be positive, got {fs}")
    return VoltageSequence(np.full(int(n), float(level)), fs)


def gen_tone(spec: ToneSpec, fs, duration):
    if fs <= 2 * spec.frequency:
        raise NyquistError(f"fs={fs} Hz cannot carry a {spec.frequency} Hz tone")
    n = np.arange(_n_samples(duration, fs))
    v = spec.dc_bias + spec.amplitude * np.sin(2 * np.pi * spec.frequency * n / fs + spec.phase)
    return VoltageSequence(v, fs)


def gen_chirp(spec: ChirpSpec, fs):
    if fs <= 2 * max(spec.f_start, spec.f_end):
        raise NyquistError(
            f"fs={fs} Hz cannot carry a chirp reaching {max(spec.f_start, spec.f_end)} Hz"
        )
    t = np.arange(_n_samples(spec.duration, fs)) / fs
    sweep = (spec.f_end - spec.f_start) / spec.duration
    phase = 2 * np.pi * (spec.f_start * t + sweep * t**2 / 2)
    return VoltageSequence(spec.dc_bias + spec.amplitude * np.sin(phase), fs)
