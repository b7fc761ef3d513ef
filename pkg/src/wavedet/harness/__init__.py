from .config import ConfigError, ExperimentConfig, SweepConfig, TimingConfig, load_config
from .experiments import (
    ChirpTrace,
    DcCheckReport,
    SweepResult,
    TimingReport,
    run_chirp,
    run_dc_check,
    run_sweep,
    timing_report,
)
from .export import export_coefficients, parse_vh, read_csv_bank
