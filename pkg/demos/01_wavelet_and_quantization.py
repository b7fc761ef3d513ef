"""Build the 6 kHz Morlet wavelet and its 14-bit coefficient bank.

Run: python demos/01_wavelet_and_quantization.py
"""
import numpy as np

from wavedet import DEFAULT_SPEC, morlet, quantize_bank, tap_count_for
from wavedet.detector import required_accumulator_bits
from wavedet.wavelets import max_width_below_lsb

# %% The default design: 6 kHz center, 20 ksps, 133 taps.
spec = DEFAULT_SPEC
bank = morlet(spec)
print(spec)
print(f"sigma = {spec.sigma * 1e3:.3f} ms, widest width keeping edges below one LSB: "
      f"{max_width_below_lsb(spec.tap_count, spec.center_freq, spec.sample_rate):.3f}")

# %% Complex taps: cosine (real) and sine (imag) under a Gaussian envelope.
mid = spec.tap_count // 2
for k in range(mid - 4, mid + 5):
    print(f"tap {k:3d}  t={spec.tap_times[k] * 1e3:+.3f} ms  re={bank.real[k]:+.5f}  im={bank.imag[k]:+.5f}")

# %% Scale by 8191 and truncate toward zero.
q = quantize_bank(bank)
print(f"{q.tap_count} taps, {q.total_coefficients} coefficients in total")
print(f"sum(real)={int(q.real.sum())}, sum(imag)={int(q.imag.sum())}")
nonzero = np.flatnonzero(q.real)
print(f"non-zero real taps span {nonzero[0]}..{nonzero[-1]}")
print(f"accumulator needs {required_accumulator_bits(q)} signed bits")

# %% Lower center frequencies need longer wavelets.
for f in (6000, 3000, 2000, 1000):
    raw = tap_count_for(f, spec.sample_rate, force_odd=False)
    print(f"{f:5d} Hz: {raw} taps per channel ({2 * raw} coefficients), built as {tap_count_for(f, spec.sample_rate)}")
