"""``wavedet`` command line.

Exit status: 0 pass, 1 check failure (or I/O error), 2 invalid config.
"""
import argparse
import math
import sys
from pathlib import Path

from .. import detector as det
from . import experiments as ex
from .config import ConfigError, load_config
from .export import FORMATS, export_coefficients

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _out_dir(cfg):
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_dc_check(cfg, args):
    report = ex.run_dc_check(cfg)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(cfg, args):
    result = ex.run_sweep(cfg)
    path = ex.write_sweep(result, _out_dir(cfg), cfg)
    for f, peak, lvl in result.rows:
        print(f"{f:8.1f} Hz  level {lvl}  {'#' * lvl}")
    ok = ex.selectivity_ok(result, cfg.wavelet.center_freq)
    print(f"wrote {path}; selectivity {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_chirp(cfg, args):
    trace = ex.run_chirp(cfg)
    path = ex.write_chirp(trace, _out_dir(cfg), cfg)
    ok = ex.chirp_localized(trace)
    print(f"peak at {trace.peak_time():.6f} s, crossing at {trace.crossing_time} s, "
          f"group delay {trace.group_delay:.6f} s")
    print(f"fixed/float correlation {trace.correlation:.6f}")
    print(f"wrote {path}; localization {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_export(cfg, args):
    _, qbank = ex.banks(cfg)
    name = f"morlet_{cfg.wavelet.center_freq:g}hz_{qbank.tap_count}taps.{args.format}"
    path = export_coefficients(qbank, _out_dir(cfg) / name, args.format)
    print(f"wrote {qbank.total_coefficients} coefficients to {path}")
    return EXIT_OK


def cmd_timing(cfg, args):
    report = ex.timing_report(cfg, center_freq=args.freq)
    print("\n".join(report.lines()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_calibrate(cfg, args):
    _, qbank = ex.banks(cfg)
    t = det.calibrate_max_response(qbank, cfg.adc)
    path = ex.write_thresholds(t, _out_dir(cfg))
    acc = det.required_accumulator_bits(qbank)
    print(f"max response M = {t.max_response} (~2^{math.log2(t.max_response):.2f})")
    print(f"accumulator bits required: {acc} (hardware: {det.HW_ACCUMULATOR_BITS})")
    print(f"response register bits: {t.response_bits} (hardware: {det.HW_RESPONSE_BITS})")
    for k, (full, clipped) in enumerate(zip(t.full, t.clipped), 1):
        print(f"LED {k}: {full}  clipped {clipped}")
    print(f"wrote {path}")
    return EXIT_OK if acc <= det.HW_ACCUMULATOR_BITS else EXIT_FAIL


COMMANDS = {
    "dc-check": (cmd_dc_check, "sample 0.4/2.9/1.65 V DC and check the codes", ()),
    "sweep": (cmd_sweep, "LED level vs input frequency", ("freq", "steps", "amplitude")),
    "chirp": (cmd_chirp, "float and fixed responses to a chirp", ("freq", "amplitude")),
    "export": (cmd_export, "write quantized coefficients", ("freq",)),
    "timing": (cmd_timing, "pulse divider and rate limits", ("freq",)),
    "calibrate": (cmd_calibrate, "derive the LED thresholds", ("freq",)),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON experiment config")
    common.add_argument("--out", type=Path, help="output directory (overrides config)")

    parser = argparse.ArgumentParser(prog="wavedet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text, overrides) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if "freq" in overrides:
            p.add_argument("--freq", type=float, help="wavelet center frequency, Hz")
        if "steps" in overrides:
            p.add_argument("--steps", type=int, help="sweep grid points")
        if "amplitude" in overrides:
            p.add_argument("--amplitude", type=float, help="stimulus amplitude, V")
        if name == "export":
            p.add_argument("--format", choices=FORMATS, default="vh")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        cfg = load_config(args.config).with_overrides(
            # timing reports an out-of-band center rather than rejecting it
            freq=None if args.command == "timing" else getattr(args, "freq", None),
            steps=getattr(args, "steps", None),
            amplitude=getattr(args, "amplitude", None),
            output_dir=args.out,
        )
    except ConfigError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return func(cfg, args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
