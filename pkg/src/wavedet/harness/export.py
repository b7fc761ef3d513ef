"""Coefficient files: CSV and a Verilog header for the FPGA build.

The ``.vh`` layout, one line per item, byte-stable for a given bank::

    // wavedet Q14 Morlet coefficients
    // value = trunc(coefficient * 8191), 14-bit two's complement
    // center_freq_hz: 6000.0
    // width: 4.5
    // sample_rate_hz: 20000.0
    // tap_count: 133
    localparam integer TAP_COUNT = 133;
    reg signed [13:0] coeff_real [0:132];
    reg signed [13:0] coeff_imag [0:132];
    initial begin
        coeff_real[0] = 14'sd0;
        ...
        coeff_imag[132] = -14'sd0;
    end

Negative values are written as ``-14'sdK``.  Real coefficients come first,
then imaginary, each in tap order (index 0 multiplies the newest sample).
"""
import csv
import re
from pathlib import Path

import numpy as np

from ..quantize import Q14CoefficientBank
from ..wavelets import WaveletSpec

FORMATS = ("vh", "csv")

_LITERAL = re.compile(r"coeff_(real|imag)\[(\d+)\]\s*=\s*(-?)14'sd(\d+);")
_META = re.compile(r"//\s*(center_freq_hz|width|sample_rate_hz|tap_count):\s*(\S+)")


def _literal(v):
    v = int(v)
    return f"-14'sd{-v}" if v < 0 else f"14'sd{v}"


def format_vh(bank: Q14CoefficientBank):
    n = bank.tap_count
    lines = [
        "// wavedet Q14 Morlet coefficients",
        "// value = trunc(coefficient * 8191), 14-bit two's complement",
    ]
    if bank.source is not None:
        s = bank.source
        lines += [
            f"// center_freq_hz: {float(s.center_freq)!r}",
            f"// width: {float(s.width)!r}",
            f"// sample_rate_hz: {float(s.sample_rate)!r}",
        ]
    lines += [
        f"// tap_count: {n}",
        f"localparam integer TAP_COUNT = {n};",
        f"reg signed [13:0] coeff_real [0:{n - 1}];",
        f"reg signed [13:0] coeff_imag [0:{n - 1}];",
        "initial begin",
    ]
    for name, values in (("real", bank.real), ("imag", bank.imag)):
        lines += [f"    coeff_{name}[{i}] = {_literal(v)};" for i, v in enumerate(values)]
    lines.append("end")
    return "\n".join(lines) + "\n"


def parse_vh(text):
    meta = dict(_META.findall(text))
    n = int(meta["tap_count"])
    arrays = {"real": [None] * n, "imag": [None] * n}
    for part, idx, sign, mag in _LITERAL.findall(text):
        arrays[part][int(idx)] = -int(mag) if sign else int(mag)
    if any(v is None for a in arrays.values() for v in a):
        raise ValueError("coefficient header is missing entries")
    source = None
    if {"center_freq_hz", "width", "sample_rate_hz"} <= meta.keys():
        source = WaveletSpec(
            center_freq=float(meta["center_freq_hz"]),
            width=float(meta["width"]),
            sample_rate=float(meta["sample_rate_hz"]),
            tap_count=n,
        )
    return Q14CoefficientBank(arrays["real"], arrays["imag"], source)


def write_csv_bank(bank: Q14CoefficientBank, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "real", "imag"])
        for i, (r, im) in enumerate(zip(bank.real, bank.imag)):
            w.writerow([i, int(r), int(im)])


def read_csv_bank(path, source=None):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    rows.sort(key=lambda r: int(r["index"]))
    if [int(r["index"]) for r in rows] != list(range(len(rows))):
        raise ValueError("coefficient CSV indices must be 0..N-1")
    real = np.array([int(r["real"]) for r in rows], dtype=np.int64)
    imag = np.array([int(r["imag"]) for r in rows], dtype=np.int64)
    return Q14CoefficientBank(real, imag, source)


def export_coefficients(bank: Q14CoefficientBank, path, fmt="vh"):
    """Write ``bank`` to ``path`` in the given format and return the path."""
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")
    path = Path(path)
    if fmt == "vh":
        path.write_text(format_vh(bank))
    else:
        write_csv_bank(bank, path)
    return path
