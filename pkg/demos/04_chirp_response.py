"""A 500 Hz - 9.5 kHz chirp through the float and 14-bit detectors.

Run: python demos/04_chirp_response.py
"""
import numpy as np

from wavedet.harness import ExperimentConfig, run_chirp

cfg = ExperimentConfig()
trace = run_chirp(cfg)
print(f"chirp crosses {cfg.wavelet.center_freq:g} Hz at {trace.crossing_time:.4f} s; "
      f"group delay {trace.group_delay * 1e3:.2f} ms")
print(f"fixed peak at {trace.peak_time('fixed'):.4f} s, float peak at {trace.peak_time('float'):.4f} s")
print(f"correlation of normalized traces: {trace.correlation:.8f}")

# %% Coarse envelope: one line per 25 ms.
step = int(0.025 * trace.sample_rate)
fixed = trace.fixed_normalized
for i in range(0, len(fixed), step):
    j = i + int(np.argmax(fixed[i:i + step]))
    lvl = int(trace.led_level[i:i + step].max())
    print(f"{trace.times[i]:5.3f} s  {fixed[j]:.4f}  {'*' * lvl}")
