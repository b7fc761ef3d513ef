"""Experiment runners: DC check, frequency sweep, chirp response, timing.

Every runner is deterministic for a given config.  ``write_*`` helpers
emit CSV plus a ``.meta.json`` sidecar describing the run.
"""
import csv
import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional

import numpy as np

from .. import detector as det
from ..frontend import (
    SamplingChain,
    ideal_level,
    max_sample_rate,
    nyquist_limit,
    pulse_timing,
    sample_stream,
)
from ..quantize import quantize_bank
from ..signals import ToneSpec, gen_chirp, gen_tone
from ..wavelets import morlet
from .config import UNSOURCED_DEFAULTS, ExperimentConfig

DC_CHECK_POINTS = ((0.4, 0x1FFF), (2.9, 0x2000), (1.65, 0x0000))


def banks(cfg: ExperimentConfig):
    fbank = morlet(cfg.wavelet)
    return fbank, quantize_bank(fbank)


def hex14(code):
    return f"0x{int(code) & 0x3FFF:04X}"


# ---------------------------------------------------------------- DC check


@dataclass(frozen=True)
class DcCheckRow:
    volts: float
    code: int
    expected: int

    @property
    def passed(self):
        return (self.code & 0x3FFF) == self.expected


@dataclass(frozen=True)
class DcCheckReport:
    rows: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.rows)

    def lines(self):
        out = []
        for r in self.rows:
            mark = "PASS" if r.passed else "FAIL"
            out.append(
                f"{r.volts:.2f} V -> {hex14(r.code)} ({r.code:d}), "
                f"expected {hex14(r.expected)}  {mark}"
            )
        return out


def run_dc_check(cfg: ExperimentConfig, n=4):
    """Sample the window edges and the reference level through the SPI link."""
    chain = SamplingChain(cfg.adc, cfg.wavelet.sample_rate, cfg.timing.clock, cfg.timing.spi_clock)
    rows = []
    for volts, expected in DC_CHECK_POINTS:
        codes = chain.capture(np.full(n, volts))
        if len(set(codes.tolist())) != 1:
            raise RuntimeError(f"DC input {volts} V gave unstable codes {codes}")
        rows.append(DcCheckRow(volts, int(codes[0]), expected))
    return DcCheckReport(tuple(rows))


# ---------------------------------------------------------------- sweep


@dataclass
class SweepResult:
    frequencies: np.ndarray
    peak_mag_sq: List[int]
    led_level: List[int]
    float_peak: np.ndarray
    thresholds: det.ThresholdBank

    @property
    def rows(self):
        return list(zip(self.frequencies.tolist(), self.peak_mag_sq, self.led_level))

    @property
    def fixed_normalized(self):
        peaks = np.array([float(p) for p in self.peak_mag_sq])
        return peaks / peaks.max()

    @property
    def float_normalized(self):
        return self.float_peak / self.float_peak.max()

    @property
    def max_mag_sq(self):
        return max(self.peak_mag_sq)


def steady_state_peak(values, tap_count):
    """Largest response once the tap line holds only stimulus samples."""
    return max(values[tap_count - 1:])


def _sweep_point(freq, cfg, fbank, qbank, thresholds, n):
    fs = cfg.wavelet.sample_rate
    tone = ToneSpec(freq, amplitude=cfg.sweep.amplitude, dc_bias=cfg.adc.v_ref)
    v = gen_tone(tone, fs, n / fs)
    state = det.DetectorState(qbank, response_bits=thresholds.response_bits)
    _, _, mag_sq = state.process(sample_stream(v, cfg.adc))
    peak = int(steady_state_peak(mag_sq, qbank.tap_count))
    fpeak = float(steady_state_peak(det.float_response(fbank, ideal_level(v.samples, cfg.adc)), qbank.tap_count))
    return peak, det.led_level(peak, thresholds), fpeak


def run_sweep(cfg: ExperimentConfig, thresholds: Optional[det.ThresholdBank] = None):
    """Full-scale tone per grid frequency through front-end and detector.

    One fresh DetectorState per frequency; points are independent.
    """
    fbank, qbank = banks(cfg)
    if thresholds is None:
        thresholds = det.calibrate_max_response(qbank, cfg.adc)
    n = det.calibration_samples(qbank)
    freqs = np.linspace(cfg.sweep.f_start, cfg.sweep.f_end, cfg.sweep.steps)
    peaks, levels, fpeaks = [], [], []
    for f in freqs:
        p, lvl, fp = _sweep_point(float(f), cfg, fbank, qbank, thresholds, n)
        peaks.append(p)
        levels.append(lvl)
        fpeaks.append(fp)
    return SweepResult(freqs, peaks, levels, np.array(fpeaks), thresholds)


def selectivity_ok(result: SweepResult, center):
    """Peak level at the grid point nearest ``center``; levels never rise with distance."""
    dist = np.abs(result.frequencies - center)
    order = np.argsort(dist, kind="stable")
    levels = np.array(result.led_level)
    if levels[order[0]] != levels.max():
        return False
    for i in range(len(order)):
        for j in range(len(order)):
            if dist[order[i]] < dist[order[j]] and levels[order[i]] < levels[order[j]]:
                return False
    return True


# ---------------------------------------------------------------- chirp


@dataclass
class ChirpTrace:
    times: np.ndarray
    float_response: np.ndarray
    fixed_mag_sq: np.ndarray  # object array of ints
    led_level: np.ndarray
    thresholds: det.ThresholdBank
    crossing_time: Optional[float]
    tap_count: int
    sample_rate: float

    @property
    def fixed_normalized(self):
        f = self.fixed_mag_sq.astype(np.float64)
        return f / f.max()

    @property
    def float_normalized(self):
        return self.float_response / self.float_response.max()

    @property
    def correlation(self):
        return float(np.corrcoef(self.fixed_normalized, self.float_normalized)[0, 1])

    @property
    def group_delay(self):
        return (self.tap_count - 1) / (2 * self.sample_rate)

    def peak_time(self, which="fixed"):
        trace = self.fixed_normalized if which == "fixed" else self.float_normalized
        return float(self.times[int(np.argmax(trace))])


def run_chirp(cfg: ExperimentConfig, thresholds: Optional[det.ThresholdBank] = None):
    fbank, qbank = banks(cfg)
    center = cfg.wavelet.center_freq
    crossing = cfg.chirp.crossing_time(center)
    if crossing is None:
        warnings.warn(
            f"chirp {cfg.chirp.f_start}-{cfg.chirp.f_end} Hz does not straddle {center} Hz",
            stacklevel=2,
        )
    if thresholds is None:
        thresholds = det.calibrate_max_response(qbank, cfg.adc)
    v = gen_chirp(cfg.chirp, cfg.wavelet.sample_rate)
    state = det.DetectorState(qbank, response_bits=thresholds.response_bits)
    _, _, mag_sq = state.process(sample_stream(v, cfg.adc))
    levels = np.array([det.led_level(m, thresholds) for m in mag_sq], dtype=np.int64)
    fresp = det.float_response(fbank, ideal_level(v.samples, cfg.adc))
    return ChirpTrace(
        v.times, fresp, mag_sq, levels, thresholds, crossing, qbank.tap_count, v.sample_rate
    )


def chirp_localized(trace: ChirpTrace, slack_samples=10, which="fixed"):
    """Peak within one group delay plus ``slack_samples`` of the crossing instant."""
    if trace.crossing_time is None:
        return False
    tol = trace.group_delay + slack_samples / trace.sample_rate
    return abs(trace.peak_time(which) - trace.crossing_time) <= tol


# ---------------------------------------------------------------- timing


@dataclass(frozen=True)
class TimingReport:
    clock: float
    divider: int
    achieved_rate: float
    spi_clock: float
    max_sample_rate: float
    nyquist: float
    center_freq: float

    @property
    def passed(self):
        return self.center_freq < self.nyquist

    def lines(self):
        return [
            f"pulse divider      : {self.divider} ({self.clock:g} Hz clock)",
            f"achieved fs        : {self.achieved_rate:g} Hz",
            f"SPI max sample rate: {self.max_sample_rate:.6g} Hz ({self.spi_clock:g} Hz SPI clock)",
            f"SPI Nyquist limit  : {nyquist_limit(self.max_sample_rate):.6g} Hz",
            f"detector Nyquist   : {self.nyquist:g} Hz",
            f"wavelet center     : {self.center_freq:g} Hz  {'PASS' if self.passed else 'FAIL'}",
        ]


def timing_report(cfg: ExperimentConfig, center_freq=None):
    """Rate arithmetic for the sampling chain.

    ``center_freq`` overrides the wavelet center without validating it, so
    an out-of-band design can be reported as failing.
    """
    t = pulse_timing(cfg.timing.clock, cfg.wavelet.sample_rate)
    return TimingReport(
        clock=cfg.timing.clock,
        divider=t.divider,
        achieved_rate=t.achieved_rate,
        spi_clock=cfg.timing.spi_clock,
        max_sample_rate=max_sample_rate(cfg.timing.spi_clock),
        nyquist=nyquist_limit(t.achieved_rate),
        center_freq=cfg.wavelet.center_freq if center_freq is None else float(center_freq),
    )


# ---------------------------------------------------------------- output


def _write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_meta(path, cfg: ExperimentConfig, **extra):
    meta = {"config": cfg.to_dict(), "unsourced_defaults": UNSOURCED_DEFAULTS}
    meta.update(extra)
    Path(path).write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")


def write_sweep(result: SweepResult, out_dir, cfg: ExperimentConfig):
    """sweep.csv: frequency_hz, peak_mag_sq, led_level, float_peak, fixed_norm, float_norm."""
    out = Path(out_dir)
    path = out / "sweep.csv"
    rows = [
        (repr(float(f)), p, lvl, repr(float(fp)), repr(float(a)), repr(float(b)))
        for f, p, lvl, fp, a, b in zip(
            result.frequencies, result.peak_mag_sq, result.led_level,
            result.float_peak, result.fixed_normalized, result.float_normalized,
        )
    ]
    _write_rows(path, ["frequency_hz", "peak_mag_sq", "led_level", "float_peak", "fixed_norm", "float_norm"], rows)
    write_meta(out / "sweep.meta.json", cfg, max_response=result.thresholds.max_response,
               response_bits=result.thresholds.response_bits)
    return path


def write_chirp(trace: ChirpTrace, out_dir, cfg: ExperimentConfig):
    """chirp.csv: time_s, float_response, fixed_mag_sq, led_level, threshold_1..threshold_8.

    The threshold columns repeat the full-width thresholds on every row so
    a plotter can draw them as horizontal lines.
    """
    out = Path(out_dir)
    path = out / "chirp.csv"
    full = list(trace.thresholds.full)
    header = ["time_s", "float_response", "fixed_mag_sq", "led_level"] + [
        f"threshold_{k}" for k in range(1, det.LED_COUNT + 1)
    ]
    rows = (
        [repr(float(t)), repr(float(fr)), int(m), int(lvl)] + full
        for t, fr, m, lvl in zip(trace.times, trace.float_response, trace.fixed_mag_sq, trace.led_level)
    )
    _write_rows(path, header, rows)
    write_meta(out / "chirp.meta.json", cfg, crossing_time_s=trace.crossing_time,
               group_delay_s=trace.group_delay, correlation=round(trace.correlation, 9))
    return path


def write_thresholds(thresholds: det.ThresholdBank, out_dir):
    """thresholds.csv: led, full, clipped."""
    path = Path(out_dir) / "thresholds.csv"
    _write_rows(
        path,
        ["led", "full", "clipped"],
        [(k + 1, f, c) for k, (f, c) in enumerate(zip(thresholds.full, thresholds.clipped))],
    )
    return path
