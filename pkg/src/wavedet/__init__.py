"""Morlet-wavelet tone detection with a bit-exact 14-bit fixed-point model."""
from .detector import (
    DetectorState,
    Response,
    ThresholdBank,
    calibrate_max_response,
    clip_response,
    float_response,
    led_level,
    push_sample,
    required_accumulator_bits,
)
from .frontend import (
    AdcConfig,
    AdcSamplePair,
    SamplingChain,
    SpiFrame,
    decode_frame,
    encode_frame,
    max_sample_rate,
    nyquist_limit,
    pulse_divider,
    sample_stream,
    sample_voltage,
)
from .quantize import Q14, Q14CoefficientBank, quantize_bank, quantize_value
from .signals import ChirpSpec, ToneSpec, VoltageSequence, gen_chirp, gen_dc, gen_tone
from .wavelets import DEFAULT_SPEC, FloatCoefficientBank, WaveletSpec, haar, morlet, tap_count_for

__version__ = "0.1.0"
