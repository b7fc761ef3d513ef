"""14-bit fixed-point conversion of coefficients and ideal signal values."""
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .wavelets import FloatCoefficientBank, WaveletSpec

Q14_BITS = 14
Q14_MIN = -(1 << (Q14_BITS - 1))
Q14_MAX = (1 << (Q14_BITS - 1)) - 1
COEFF_SCALE = Q14_MAX  # unit-peak coefficients map to 8191


class QuantizationRangeError(ValueError):
    pass


class Q14(int):
    """Signed 14-bit code in [-8192, 8191]."""

    def __new__(cls, value):
        v = int(value)
        if not Q14_MIN <= v <= Q14_MAX:
            raise QuantizationRangeError(f"{v} outside Q14 range [{Q14_MIN}, {Q14_MAX}]")
        return super().__new__(cls, v)

    def __repr__(self):
        return f"Q14({int(self)})"


def quantize_value(x):
    """Scale by 8191 and truncate toward zero."""
    if not abs(x) <= 1.0:
        raise QuantizationRangeError(f"|{x}| > 1 cannot be quantized")
    return Q14(math.trunc(x * COEFF_SCALE))


def quantize_array(x):
    x = np.asarray(x, dtype=np.float64)
    if x.size and not np.all(np.abs(x) <= 1.0):
        raise QuantizationRangeError("values outside [-1, 1] cannot be quantized")
    return np.trunc(x * COEFF_SCALE).astype(np.int64)


@dataclass(frozen=True)
class Q14CoefficientBank:
    real: np.ndarray
    imag: np.ndarray
    source: Optional[WaveletSpec] = None

    def __post_init__(self):
        real = np.array(self.real, dtype=np.int64)
        imag = np.array(self.imag, dtype=np.int64)
        if real.shape != imag.shape or real.ndim != 1:
            raise ValueError("real and imag must be 1-D and equally long")
        if self.source is not None and len(real) != self.source.tap_count:
            raise ValueError("bank length does not match source.tap_count")
        for a in (real, imag):
            if a.size and (a.min() < -COEFF_SCALE or a.max() > COEFF_SCALE):
                raise QuantizationRangeError("coefficients must lie in [-8191, 8191]")
            a.setflags(write=False)
        object.__setattr__(self, "real", real)
        object.__setattr__(self, "imag", imag)

    def __len__(self):
        return len(self.real)

    @property
    def tap_count(self):
        return len(self.real)

    @property
    def total_coefficients(self):
        return 2 * len(self.real)

    def __eq__(self, other):
        if not isinstance(other, Q14CoefficientBank):
            return NotImplemented
        return (
            np.array_equal(self.real, other.real)
            and np.array_equal(self.imag, other.imag)
            and self.source == other.source
        )

    __hash__ = None


def quantize_bank(bank: FloatCoefficientBank):
    return Q14CoefficientBank(quantize_array(bank.real), quantize_array(bank.imag), bank.spec)


def dequantize(codes):
    return np.asarray(codes, dtype=np.float64) / COEFF_SCALE
