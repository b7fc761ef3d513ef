"""LED level vs input frequency for full-scale tones.

Run: python demos/03_frequency_sweep.py
"""
from wavedet.harness import ExperimentConfig, run_sweep

cfg = ExperimentConfig()
result = run_sweep(cfg)
t = result.thresholds
print(f"M = {t.max_response}, response register {t.response_bits} bits")
print("thresholds:", t.full)

# %% Fixed path (LED level) next to the float reference.
for (f, peak, lvl), a, b in zip(result.rows, result.fixed_normalized, result.float_normalized):
    print(f"{f:7.0f} Hz  {'#' * lvl:8s} {lvl}  fixed {a:.5f}  float {b:.5f}")
