"""The ADC front-end: inverting pre-amp, 14-bit codes and the 34-bit SPI frame.

Run: python demos/02_adc_frontend.py
"""
from wavedet import (
    AdcSamplePair,
    SamplingChain,
    decode_frame,
    encode_frame,
    gen_dc,
    max_sample_rate,
    nyquist_limit,
    pulse_divider,
    sample_voltage,
)

# %% Window edges and reference at gain -1.
for v in (0.0, 0.4, 1.0, 1.65, 2.3, 2.9, 3.3):
    code = sample_voltage(v)
    print(f"{v:4.2f} V -> {int(code):6d}  0x{int(code) & 0x3FFF:04X}")

# %% One frame per conversion: pad, channel A, pad, channel B, pad.
frame = encode_frame(AdcSamplePair(8191, -8192))
print(frame.to_text())
print(decode_frame(frame))

# %% Rates: 34 SPI cycles per conversion, and the 20 ksps ADCON pulse.
print(f"max sample rate @50 MHz SPI: {max_sample_rate(50e6) / 1e6:.4f} MS/s, "
      f"Nyquist {nyquist_limit(max_sample_rate(50e6)) / 1e6:.4f} MHz")
print(f"10 MHz / {pulse_divider(10e6, 20e3)} -> 20 kHz")

# %% A DC input sampled repeatedly through the SPI link.
chain = SamplingChain()
print(chain.capture(gen_dc(2.9, 5, chain.sample_rate)))
