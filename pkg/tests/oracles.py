"""Independent reference computations for the tests.

Nothing here imports the package's numeric paths; these are slow, direct
transcriptions of the definitions using the ``math`` module and Python ints.
"""
import cmath
import math


def morlet_tap(n, tap_count, center_freq, width, fs):
    t = (n - (tap_count - 1) / 2) / fs
    sigma = width / center_freq
    g = math.exp(-t * t / (2 * sigma * sigma))
    return math.cos(2 * math.pi * center_freq * t) * g, math.sin(2 * math.pi * center_freq * t) * g


def morlet_q14(tap_count, center_freq, width, fs):
    re, im = [], []
    for n in range(tap_count):
        r, i = morlet_tap(n, tap_count, center_freq, width, fs)
        re.append(int(r * 8191))  # int() truncates toward zero
        im.append(int(i * 8191))
    return re, im


def adc_code(v, v_ref=1.65, half=1.25):
    x = -(v - v_ref) / half * 8192
    code = math.floor(abs(x) + 0.5) * (1 if x >= 0 else -1)
    return max(-8192, min(8191, code))


def fir_mag_sq(samples, re, im):
    """Brute-force streaming dot product; returns mag_sq after every sample."""
    taps = [0] * len(re)
    out = []
    for s in samples:
        taps = [int(s)] + taps[:-1]
        r = sum(a * b for a, b in zip(taps, re))
        i = sum(a * b for a, b in zip(taps, im))
        out.append(r * r + i * i)
    return out


def tone_codes(freq, n, fs, phase=0.0, amplitude=1.25, bias=1.65):
    return [adc_code(bias + amplitude * math.sin(2 * math.pi * freq * k / fs + phase)) for k in range(n)]


def steady_float_mag_sq(freq, tap_count, center_freq, width, fs, n_out=None):
    """Peak |sum x[n-i] w[i]|^2 of a unit sine once the tap line is full."""
    w = [complex(*morlet_tap(i, tap_count, center_freq, width, fs)) for i in range(tap_count)]
    n_out = n_out or 2 * tap_count
    best = 0.0
    for n in range(tap_count - 1, tap_count - 1 + n_out):
        y = sum(math.sin(2 * math.pi * freq * (n - i) / fs) * w[i] for i in range(tap_count))
        best = max(best, abs(y) ** 2)
    return best


def twos14(v):
    return format(v & 0x3FFF, "014b")


def frame_text(a, b):
    return "00" + twos14(a) + "00" + twos14(b) + "00"


def unit_phasor(x):
    return cmath.exp(1j * x)
