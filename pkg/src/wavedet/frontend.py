"""Pre-amplifier, dual 14-bit ADC and 34-bit SPI frame model.

Only the corrected behaviour of the serial read is modelled: bits are
shifted into a register in transmission order and the two channel fields
are sliced out once the whole frame is in.  Pad bits go out as 0.
"""
from dataclasses import dataclass

import numpy as np

from .quantize import Q14, Q14_BITS, Q14_MAX, Q14_MIN
from .signals import VoltageSequence

SPI_FRAME_BITS = 34
PAD_BITS = 2
# gain code -> signed gain; only the unity inverting setting is supported
GAIN_CODES = {0x01: -1}

_FIELD_MASK = (1 << Q14_BITS) - 1
_CH_A_SHIFT = PAD_BITS + Q14_BITS + PAD_BITS  # bit position of channel A LSB
_CH_B_SHIFT = PAD_BITS


class AdcDamageError(ValueError):
    """Input voltage above the absolute maximum rating."""


class FramingError(ValueError):
    pass


@dataclass(frozen=True)
class AdcConfig:
    v_ref: float = 1.65
    v_min: float = 0.4
    v_max: float = 2.9
    v_abs_max: float = 3.3
    bits: int = 14
    gain_code: int = 0x01

    def __post_init__(self):
        if self.gain_code not in GAIN_CODES:
            raise ValueError(f"unsupported pre-amp gain code {self.gain_code:#04x}")
        if not self.v_min < self.v_ref < self.v_max <= self.v_abs_max:
            raise ValueError("require v_min < v_ref < v_max <= v_abs_max")
        if not np.isclose(self.v_ref - self.v_min, self.v_max - self.v_ref):
            raise ValueError("ADC window must be symmetric about v_ref")
        if self.bits != Q14_BITS:
            raise ValueError(f"only {Q14_BITS}-bit conversion is modelled")

    @property
    def gain(self):
        return GAIN_CODES[self.gain_code]

    @property
    def half_window(self):
        return self.v_max - self.v_ref

    @property
    def full_scale_amplitude(self):
        return self.half_window

    @property
    def code_range(self):
        return -(1 << (self.bits - 1)), (1 << (self.bits - 1)) - 1


DEFAULT_ADC = AdcConfig()


def _round_half_away(x):
    return np.sign(x) * np.floor(np.abs(x) + 0.5)


def _codes(v, cfg):
    v = np.asarray(v, dtype=np.float64)
    if np.any(v > cfg.v_abs_max):
        raise AdcDamageError(f"input above {cfg.v_abs_max} V absolute maximum")
    if np.any(v < 0):
        raise ValueError("negative input voltage")
    scale = 1 << (cfg.bits - 1)
    x = cfg.gain * (v - cfg.v_ref) / cfg.half_window * scale
    lo, hi = cfg.code_range
    return np.clip(_round_half_away(x), lo, hi).astype(np.int64)


def sample_voltage(v, cfg: AdcConfig = DEFAULT_ADC):
    return Q14(_codes(float(v), cfg))


def sample_stream(seq, cfg: AdcConfig = DEFAULT_ADC):
    samples = seq.samples if isinstance(seq, VoltageSequence) else seq
    return _codes(samples, cfg)


def ideal_level(v, cfg: AdcConfig = DEFAULT_ADC):
    """Unquantized, unclipped dimensionless ADC input (1.0 at full scale)."""
    return cfg.gain * (np.asarray(v, dtype=np.float64) - cfg.v_ref) / cfg.half_window


@dataclass(frozen=True)
class AdcSamplePair:
    channel_a: int
    channel_b: int

    def __post_init__(self):
        object.__setattr__(self, "channel_a", Q14(self.channel_a))
        object.__setattr__(self, "channel_b", Q14(self.channel_b))


@dataclass(frozen=True)
class SpiFrame:
    """34 bits in transmission order."""

    bits: tuple

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if len(bits) != SPI_FRAME_BITS:
            raise FramingError(f"expected {SPI_FRAME_BITS} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise FramingError("frame bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    def to_text(self):
        return "".join(str(b) for b in self.bits)

    @classmethod
    def from_text(cls, text):
        text = text.strip()
        if any(c not in "01" for c in text):
            raise FramingError(f"frame text may only contain '0'/'1': {text!r}")
        return cls(tuple(int(c) for c in text))

    def __str__(self):
        return self.to_text()


def _twos(value):
    return value & _FIELD_MASK


def _sign_extend(field):
    return field - (1 << Q14_BITS) if field & (1 << (Q14_BITS - 1)) else field


def encode_frame(pair: AdcSamplePair):
    word = (_twos(pair.channel_a) << _CH_A_SHIFT) | (_twos(pair.channel_b) << _CH_B_SHIFT)
    return SpiFrame(tuple((word >> (SPI_FRAME_BITS - 1 - i)) & 1 for i in range(SPI_FRAME_BITS)))


def decode_frame(frame):
    bits = frame.bits if isinstance(frame, SpiFrame) else tuple(frame)
    if len(bits) != SPI_FRAME_BITS:
        raise FramingError(f"expected {SPI_FRAME_BITS} bits, got {len(bits)}")
    reg = 0
    for b in bits:  # new LSB on each falling SPI clock edge
        reg = (reg << 1) | (int(b) & 1)
    a = _sign_extend((reg >> _CH_A_SHIFT) & _FIELD_MASK)
    b = _sign_extend((reg >> _CH_B_SHIFT) & _FIELD_MASK)
    return AdcSamplePair(a, b)


def max_sample_rate(spi_clock):
    if spi_clock <= 0:
        raise ValueError(f"spi_clock must be positive, got {spi_clock}")
    return spi_clock / SPI_FRAME_BITS


def nyquist_limit(fs):
    if fs <= 0:
        raise ValueError(f"fs must be positive, got {fs}")
    return fs / 2


@dataclass(frozen=True)
class PulseTiming:
    clock: float
    target_rate: float
    divider: int

    @property
    def achieved_rate(self):
        return self.clock / self.divider

    @property
    def relative_error(self):
        return abs(self.achieved_rate - self.target_rate) / self.target_rate

    @property
    def period(self):
        return self.divider / self.clock


def pulse_timing(clk, target_fs):
    if target_fs <= 0 or clk <= 0:
        raise ValueError("clock and target rate must be positive")
    if target_fs > clk:
        raise ValueError(f"target rate {target_fs} Hz exceeds clock {clk} Hz")
    return PulseTiming(clk, target_fs, max(1, round(clk / target_fs)))


def pulse_divider(clk, target_fs):
    """Counter length that turns ``clk`` into a one-cycle pulse at ``target_fs``."""
    return pulse_timing(clk, target_fs).divider


class SamplingChain:
    """ADCON pulse generator + ADC + SPI transfer at a fixed sample rate.

    The pre-amp gain is fixed before the first sample; no programming
    transaction is simulated.
    """

    def __init__(self, cfg: AdcConfig = DEFAULT_ADC, sample_rate=20e3, clock=10e6, spi_clock=50e6):
        limit = max_sample_rate(spi_clock)
        if sample_rate > limit:
            raise ValueError(
                f"sample rate {sample_rate} Hz exceeds SPI limit {limit:.1f} Hz "
                f"({SPI_FRAME_BITS} bits at {spi_clock} Hz)"
            )
        self.cfg = cfg
        self.timing = pulse_timing(clock, sample_rate)
        self.spi_clock = spi_clock

    @property
    def sample_rate(self):
        return self.timing.achieved_rate

    def frames(self, seq, channel_b=None):
        """SPI frames for ``seq``; channel B mirrors channel A unless given."""
        a = sample_stream(seq, self.cfg)
        b = a if channel_b is None else sample_stream(channel_b, self.cfg)
        if len(b) != len(a):
            raise ValueError("channel sequences differ in length")
        return [encode_frame(AdcSamplePair(int(x), int(y))) for x, y in zip(a, b)]

    def capture(self, seq):
        """Channel-A codes after a full encode/decode pass over the SPI link."""
        return np.array([decode_frame(f).channel_a for f in self.frames(seq)], dtype=np.int64)
