"""Experiment configuration, loaded from a single JSON file.

Every field is optional; missing fields fall back to the defaults, which
reproduce the hardware design (6 kHz wavelet, 20 ksps, 133 taps, gain -1,
1.25 V full-scale tones).  Example::

    {
      "wavelet": {"center_freq": 6000, "width": 4.5, "sample_rate": 20000, "tap_count": 133},
      "adc": {"gain_code": 1},
      "sweep": {"f_start": 500, "f_end": 9500, "steps": 37, "amplitude": 1.25},
      "chirp": {"f_start": 500, "f_end": 9500, "duration": 1.0},
      "timing": {"clock": 10e6, "spi_clock": 50e6},
      "output_dir": "out"
    }
"""
import json
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from ..frontend import DEFAULT_ADC, AdcConfig
from ..signals import ChirpSpec
from ..wavelets import DEFAULT_SPEC, WaveletSpec, scaled_spec


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    f_start: float = 500.0
    f_end: float = 9500.0
    steps: int = 37
    amplitude: float = 1.25

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError(f"sweep needs at least 2 steps, got {self.steps}")
        if not 0 < self.f_start < self.f_end:
            raise ConfigError("sweep requires 0 < f_start < f_end")
        if self.amplitude < 0:
            raise ConfigError("sweep amplitude must be non-negative")


@dataclass(frozen=True)
class TimingConfig:
    clock: float = 10e6
    spi_clock: float = 50e6

    def __post_init__(self):
        if self.clock <= 0 or self.spi_clock <= 0:
            raise ConfigError("clock rates must be positive")


DEFAULT_CHIRP = ChirpSpec(f_start=500.0, f_end=9500.0, duration=1.0)

# Choices the hardware write-up leaves open; echoed into output metadata.
UNSOURCED_DEFAULTS = {
    "wavelet.width": "chosen so both edge taps fall below one 14-bit LSB",
    "sweep": "500 Hz - 9.5 kHz in 37 steps (250 Hz grid) is a chosen grid",
    "chirp": "500 Hz - 9.5 kHz over 1 s is a chosen sweep",
}


@dataclass(frozen=True)
class ExperimentConfig:
    wavelet: WaveletSpec = DEFAULT_SPEC
    adc: AdcConfig = DEFAULT_ADC
    sweep: SweepConfig = field(default_factory=SweepConfig)
    chirp: ChirpSpec = DEFAULT_CHIRP
    timing: TimingConfig = field(default_factory=TimingConfig)
    output_dir: str = "out"

    def to_dict(self):
        return asdict(self)

    def with_overrides(self, freq=None, steps=None, amplitude=None, output_dir=None):
        cfg = self
        try:
            if freq is not None:
                cfg = replace(cfg, wavelet=scaled_spec(freq, reference=cfg.wavelet))
            if steps is not None:
                cfg = replace(cfg, sweep=replace(cfg.sweep, steps=steps))
            if amplitude is not None:
                cfg = replace(
                    cfg,
                    sweep=replace(cfg.sweep, amplitude=amplitude),
                    chirp=replace(cfg.chirp, amplitude=amplitude),
                )
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if output_dir is not None:
            cfg = replace(cfg, output_dir=str(output_dir))
        return cfg


_SECTIONS = {
    "wavelet": WaveletSpec,
    "adc": AdcConfig,
    "sweep": SweepConfig,
    "chirp": ChirpSpec,
    "timing": TimingConfig,
}


def config_from_dict(data):
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    unknown = set(data) - set(_SECTIONS) - {"output_dir"}
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    kwargs = {}
    defaults = ExperimentConfig()
    for name, cls in _SECTIONS.items():
        section = data.get(name, {})
        if not isinstance(section, dict):
            raise ConfigError(f"'{name}' must be an object")
        allowed = {f.name for f in fields(cls) if f.init}
        bad = set(section) - allowed
        if bad:
            raise ConfigError(f"unknown keys in '{name}': {sorted(bad)}")
        try:
            kwargs[name] = replace(getattr(defaults, name), **section)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"invalid '{name}' section: {exc}") from exc
    if "output_dir" in data:
        kwargs["output_dir"] = str(data["output_dir"])
    return ExperimentConfig(**kwargs)


def load_config(path=None):
    if path is None:
        return ExperimentConfig()
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    return config_from_dict(data)


def dump_config(cfg, path):
    Path(path).write_text(json.dumps(cfg.to_dict(), indent=2, sort_keys=True) + "\n")
