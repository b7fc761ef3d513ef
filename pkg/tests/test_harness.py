import json
import re

import numpy as np
import pytest

from wavedet import detector as det
from wavedet.harness import cli
from wavedet.harness import experiments as ex
from wavedet.harness.config import ConfigError, ExperimentConfig, config_from_dict, dump_config, load_config
from wavedet.harness.export import export_coefficients, format_vh, parse_vh, read_csv_bank
from wavedet.signals import ChirpSpec
from wavedet.wavelets import DEFAULT_SPEC


@pytest.fixture(scope="module")
def cfg():
    return ExperimentConfig()


@pytest.fixture(scope="module")
def qbank(cfg):
    return ex.banks(cfg)[1]


@pytest.fixture(scope="module")
def sweep(cfg):
    return ex.run_sweep(cfg)


# ---------------------------------------------------------------- config


def test_default_config(cfg):
    assert cfg.wavelet == DEFAULT_SPEC
    assert cfg.adc.gain == -1
    assert (cfg.sweep.f_start, cfg.sweep.f_end, cfg.sweep.steps) == (500, 9500, 37)
    assert cfg.sweep.amplitude == 1.25


def test_config_roundtrip(tmp_path, cfg):
    path = tmp_path / "c.json"
    dump_config(cfg, path)
    assert load_config(path) == cfg


def test_partial_config():
    cfg = config_from_dict({"sweep": {"steps": 5}, "output_dir": "x"})
    assert cfg.sweep.steps == 5 and cfg.sweep.f_end == 9500 and cfg.output_dir == "x"


@pytest.mark.parametrize(
    "data",
    [
        {"sweep": {"steps": 1}},
        {"wavelet": {"tap_count": 132}},
        {"wavelet": {"center_freq": 11000}},
        {"adc": {"gain_code": 5}},
        {"bogus": {}},
        {"sweep": {"nope": 1}},
        {"chirp": {"duration": 0}},
        [],
    ],
)
def test_invalid_config(data):
    with pytest.raises(ConfigError):
        config_from_dict(data)


def test_overrides(cfg):
    c = cfg.with_overrides(freq=3000, steps=5, amplitude=1.0)
    assert c.wavelet.center_freq == 3000 and c.wavelet.tap_count == 267
    assert c.sweep.steps == 5 and c.sweep.amplitude == 1.0 and c.chirp.amplitude == 1.0
    with pytest.raises(ConfigError):
        cfg.with_overrides(freq=12000)


# ---------------------------------------------------------------- export


def test_vh_has_266_literals(qbank):
    text = format_vh(qbank)
    literals = re.findall(r"-?14'sd\d+", text)
    assert len(literals) == 266
    values = [int(v.replace("14'sd", "")) for v in literals]
    assert min(values) >= -8191 and max(values) <= 8191
    assert "tap_count: 133" in text and "center_freq_hz: 6000.0" in text


def test_vh_roundtrip(qbank, tmp_path):
    path = export_coefficients(qbank, tmp_path / "w.vh", "vh")
    assert parse_vh(path.read_text()) == qbank
    assert format_vh(qbank) == format_vh(parse_vh(format_vh(qbank)))


def test_csv_roundtrip(qbank, tmp_path):
    path = export_coefficients(qbank, tmp_path / "w.csv", "csv")
    assert read_csv_bank(path, qbank.source) == qbank
    assert path.read_text().splitlines()[0] == "index,real,imag"


def test_export_errors(qbank, tmp_path):
    with pytest.raises(ValueError):
        export_coefficients(qbank, tmp_path / "w.bin", "bin")
    with pytest.raises(OSError):
        export_coefficients(qbank, tmp_path / "missing" / "w.vh", "vh")


# ---------------------------------------------------------------- experiments


def test_dc_check(cfg):
    report = ex.run_dc_check(cfg)
    assert report.passed
    assert [ex.hex14(r.code) for r in report.rows] == ["0x1FFF", "0x2000", "0x0000"]


def test_sweep_examples(sweep):
    f = sweep.frequencies.tolist()
    assert f == sorted(f) and len(f) == 37 and f[1] - f[0] == 250
    lvl = dict(zip(f, sweep.led_level))
    assert lvl[6000.0] == 8
    assert lvl[500.0] == 0 and lvl[9500.0] == 0
    assert ex.selectivity_ok(sweep, 6000)


def test_selectivity_check_detects_violation(sweep):
    bad = ex.SweepResult(
        sweep.frequencies, sweep.peak_mag_sq, list(sweep.led_level), sweep.float_peak, sweep.thresholds
    )
    bad.led_level[0] = 3
    assert not ex.selectivity_ok(bad, 6000)


def test_chirp_examples(cfg):
    trace = ex.run_chirp(cfg)
    n = trace.tap_count
    assert abs(trace.peak_time() - (trace.crossing_time + trace.group_delay)) <= n / (2 * 20e3)
    assert trace.correlation >= 0.99
    assert trace.led_level.max() == 8


def test_off_band_chirp_stays_dark(cfg):
    from dataclasses import replace

    c = replace(cfg, chirp=ChirpSpec(100, 1000, 0.5))
    with pytest.warns(UserWarning, match="straddle"):
        trace = ex.run_chirp(c)
    assert trace.led_level.max() == 0
    assert not ex.chirp_localized(trace)


def test_timing_report(cfg):
    r = ex.timing_report(cfg)
    assert r.divider == 500 and r.achieved_rate == 20e3
    assert r.max_sample_rate == pytest.approx(1.47e6, rel=5e-3)
    assert r.max_sample_rate / 2 == pytest.approx(0.735e6, rel=5e-3)
    assert r.passed
    assert not ex.timing_report(cfg, center_freq=11000).passed


def test_outputs_are_deterministic(cfg, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        ex.write_sweep(ex.run_sweep(cfg), d, cfg)
        ex.write_chirp(ex.run_chirp(cfg), d, cfg)
    for name in ("sweep.csv", "sweep.meta.json", "chirp.csv", "chirp.meta.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_chirp_csv_schema(cfg, tmp_path):
    trace = ex.run_chirp(cfg)
    path = ex.write_chirp(trace, tmp_path, cfg)
    lines = path.read_text().splitlines()
    assert lines[0].split(",") == [
        "time_s", "float_response", "fixed_mag_sq", "led_level",
        *[f"threshold_{k}" for k in range(1, 9)],
    ]
    assert len(lines) == 1 + len(trace.times)
    meta = json.loads((tmp_path / "chirp.meta.json").read_text())
    assert "unsourced_defaults" in meta and meta["config"]["chirp"]["f_start"] == 500.0


# ---------------------------------------------------------------- CLI


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


def test_cli_dc_check(capsys):
    assert run_cli("dc-check") == 0
    assert "0x2000" in capsys.readouterr().out


def test_cli_timing(capsys):
    assert run_cli("timing") == 0
    out = capsys.readouterr().out
    assert "500" in out and "1.47059e+06" in out
    assert run_cli("timing", "--freq", 11000) == 1


def test_cli_export_and_calibrate(tmp_path):
    assert run_cli("export", "--out", tmp_path) == 0
    vh = tmp_path / "morlet_6000hz_133taps.vh"
    assert len(re.findall(r"14'sd", vh.read_text())) == 266
    assert run_cli("export", "--out", tmp_path, "--format", "csv") == 0
    assert run_cli("calibrate", "--out", tmp_path) == 0
    rows = (tmp_path / "thresholds.csv").read_text().splitlines()
    assert rows[0] == "led,full,clipped" and len(rows) == 9


def test_cli_sweep_and_chirp(tmp_path):
    assert run_cli("sweep", "--out", tmp_path, "--steps", 19) == 0
    assert len((tmp_path / "sweep.csv").read_text().splitlines()) == 20
    assert run_cli("chirp", "--out", tmp_path) == 0


def test_cli_config_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"sweep": {"steps": 1}}')
    assert run_cli("sweep", "--config", bad) == 2
    bad.write_text("{not json")
    assert run_cli("dc-check", "--config", bad) == 2
    assert run_cli("dc-check", "--config", tmp_path / "nope.json") == 2
    assert run_cli("sweep", "--freq", 15000) == 2


def test_cli_dc_check_failure(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"adc": {"v_ref": 1.6, "v_min": 0.35, "v_max": 2.85}}')
    assert run_cli("dc-check", "--config", cfg) == 1


def test_cli_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"output_dir": str(tmp_path / "o"), "sweep": {"steps": 7}}))
    assert run_cli("sweep", "--config", cfg) == 0
    assert len((tmp_path / "o" / "sweep.csv").read_text().splitlines()) == 8
