"""Complex Morlet (and Haar) coefficient banks sampled at the detector rate."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .signals import NyquistError

# One 14-bit coefficient LSB; the default width keeps the truncated edges below it.
Q14_LSB = 1.0 / 8191


@dataclass(frozen=True)
class WaveletSpec:
    """Morlet parameters.

    ``width`` sets the Gaussian envelope: sigma = width / center_freq seconds.
    """

    center_freq: float = 6000.0
    width: float = 4.5
    sample_rate: float = 20000.0
    tap_count: int = 133

    def __post_init__(self):
        if self.tap_count < 1 or self.tap_count % 2 == 0:
            raise ValueError(f"tap_count must be odd and positive, got {self.tap_count}")
        if self.width <= 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.center_freq <= 0:
            raise ValueError(f"center_freq must be positive, got {self.center_freq}")
        if self.center_freq >= self.sample_rate / 2:
            raise NyquistError(
                f"center_freq {self.center_freq} Hz is not below fs/2 = {self.sample_rate / 2} Hz"
            )

    @property
    def sigma(self):
        return self.width / self.center_freq

    @property
    def tap_times(self):
        n = np.arange(self.tap_count)
        return (n - (self.tap_count - 1) / 2) / self.sample_rate


DEFAULT_SPEC = WaveletSpec()


@dataclass(frozen=True)
class FloatCoefficientBank:
    real: np.ndarray
    imag: np.ndarray
    spec: Optional[WaveletSpec] = None

    def __post_init__(self):
        real = np.array(self.real, dtype=np.float64)
        imag = np.array(self.imag, dtype=np.float64)
        if real.shape != imag.shape or real.ndim != 1:
            raise ValueError("real and imag must be 1-D and equally long")
        if self.spec is not None and len(real) != self.spec.tap_count:
            raise ValueError("bank length does not match spec.tap_count")
        for a in (real, imag):
            a.setflags(write=False)
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "imag", imag)

    def __len__(self):
        return len(self.real)

    @property
    def complex(self):
        return self.real + 1j * self.imag


def gaussian_envelope(t, spec: WaveletSpec):
    return np.exp(-np.square(t) / (2 * spec.sigma**2))


def morlet(spec: WaveletSpec = DEFAULT_SPEC):
    t = spec.tap_times
    env = gaussian_envelope(t, spec)
    arg = 2 * np.pi * spec.center_freq * t
    real = np.cos(arg) * env
    imag = np.sin(arg) * env
    # t is exactly zero at the center tap, but keep the symmetry tap-exact
    # regardless of how cos/sin round at mirrored arguments.
    half = spec.tap_count // 2
    real[half + 1:] = real[:half][::-1]
    imag[half + 1:] = -imag[:half][::-1]
    imag[half] = 0.0
    return FloatCoefficientBank(real, imag, spec)


def max_width_below_lsb(tap_count, center_freq, sample_rate, lsb=Q14_LSB):
    """Largest Morlet width whose edge taps have envelope strictly below ``lsb``.

    exp(-t^2 / (2 sigma^2)) < lsb  <=>  t / sigma > sqrt(2 ln(1/lsb)).
    """
    t_edge = (tap_count - 1) / 2 / sample_rate
    return t_edge * center_freq / math.sqrt(2 * math.log(1 / lsb))


def _check_default_width():
    limit = max_width_below_lsb(
        DEFAULT_SPEC.tap_count, DEFAULT_SPEC.center_freq, DEFAULT_SPEC.sample_rate
    )
    edge = gaussian_envelope(DEFAULT_SPEC.tap_times[0], DEFAULT_SPEC)
    assert DEFAULT_SPEC.width <= limit and edge < Q14_LSB, (
        f"default width {DEFAULT_SPEC.width} leaves edge envelope {edge} >= one LSB "
        f"(limit {limit:.3f})"
    )


_check_default_width()


def tap_count_for(center_freq, sample_rate, reference: WaveletSpec = DEFAULT_SPEC, force_odd=True):
    """Scale the reference tap count to a new center frequency and sample rate.

    With ``force_odd=False`` the raw scaled count is returned; that is the
    figure to use when estimating coefficient storage (2 per tap).
    """
    if center_freq <= 0:
        raise ValueError(f"center_freq must be positive, got {center_freq}")
    if sample_rate <= 0:
        raise ValueError(f"sample_rate must be positive, got {sample_rate}")
    n = round(
        reference.tap_count
        * (reference.center_freq / center_freq)
        * (sample_rate / reference.sample_rate)
    )
    n = max(n, 1)
    if force_odd and n % 2 == 0:
        n += 1
    return n


def scaled_spec(center_freq, reference: WaveletSpec = DEFAULT_SPEC, sample_rate=None):
    """Same width (in cycles) as ``reference``, retuned to ``center_freq``."""
    fs = reference.sample_rate if sample_rate is None else sample_rate
    return WaveletSpec(
        center_freq=center_freq,
        width=reference.width,
        sample_rate=fs,
        tap_count=tap_count_for(center_freq, fs, reference),
    )


def haar(n_samples):
    if n_samples < 2 or n_samples % 2:
        raise ValueError(f"n_samples must be even and >= 2, got {n_samples}")
    half = n_samples // 2
    real = np.concatenate([np.ones(half), -np.ones(half)])
    return FloatCoefficientBank(real, np.zeros(n_samples))
