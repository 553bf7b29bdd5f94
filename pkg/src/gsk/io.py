"""Plain-text signal input and coefficient CSV output.

Signal files hold one sample per line (a real number, or ``re,im``), with
optional metadata lines ``# dt=<decimal>`` and ``# t0=<decimal>``. Other
``#`` lines and blank lines are ignored.

Coefficient files start with ``#`` header lines (``# kind=``, ``# axis1=name:v,v,...``,
``# axis2=...``) followed by one row per axis1 value of ``re,im`` pairs.
Every number is written with 17 significant digits.
"""

from __future__ import annotations

import numpy as np

from .errors import SignalParseError
from .transforms import CoefficientGrid, Signal1D


def fmt(x: float) -> str:
    return f"{float(x):.16e}"


def _parse_number(text: str, line: int) -> float:
    try:
        v = float(text)
    except ValueError:
        raise SignalParseError(f"cannot parse {text.strip()!r} as a number", line) from None
    if not np.isfinite(v):
        raise SignalParseError(f"non-finite value {text.strip()!r}", line)
    return v


def parse_signal(text: str) -> Signal1D:
    meta = {"dt": 1.0, "t0": 0.0}
    samples = []
    complex_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition("=")
            key = key.strip().lower()
            if sep and key in meta:
                meta[key] = _parse_number(value, lineno)
            continue
        parts = line.split(",")
        if len(parts) == 1:
            samples.append(complex(_parse_number(parts[0], lineno)))
        elif len(parts) == 2:
            samples.append(complex(_parse_number(parts[0], lineno), _parse_number(parts[1], lineno)))
            complex_seen = True
        else:
            raise SignalParseError(f"expected one value or a re,im pair, got {len(parts)} fields",
                                   lineno)
    if not samples:
        raise SignalParseError("no samples in input")
    if len(samples) < 2:
        raise SignalParseError("a signal needs at least two samples")
    if meta["dt"] <= 0:
        raise SignalParseError(f"dt must be positive, got {meta['dt']}")
    x = np.array(samples)
    return Signal1D(x if complex_seen else x.real, meta["dt"], meta["t0"])


def read_signal(path: str) -> Signal1D:
    with open(path, encoding="utf-8") as fh:
        return parse_signal(fh.read())


def format_signal(signal: Signal1D) -> str:
    lines = [f"# dt={fmt(signal.dt)}", f"# t0={fmt(signal.t0)}"]
    if signal.is_real:
        lines += [fmt(x) for x in signal.samples]
    else:
        lines += [f"{fmt(z.real)},{fmt(z.imag)}" for z in signal.samples]
    return "\n".join(lines) + "\n"


def write_signal(signal: Signal1D, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_signal(signal))


def format_coefficients(grid: CoefficientGrid) -> str:
    (n1, a1), (n2, a2) = grid.axes
    lines = [f"# kind={grid.kind}",
             f"# axis1={n1}:" + ",".join(fmt(x) for x in a1),
             f"# axis2={n2}:" + ",".join(fmt(x) for x in a2)]
    for row in grid.values:
        lines.append(",".join(f"{fmt(z.real)},{fmt(z.imag)}" for z in row))
    return "\n".join(lines) + "\n"


def write_coefficients(grid: CoefficientGrid, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_coefficients(grid))


def read_coefficients(path: str) -> CoefficientGrid:
    kind, axes, rows = None, [], []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key == "kind":
                    kind = value
                elif key in ("axis1", "axis2"):
                    name, _, nums = value.partition(":")
                    axes.append((name, np.array([_parse_number(x, lineno) for x in nums.split(",")])))
                continue
            vals = [_parse_number(x, lineno) for x in line.split(",")]
            rows.append(np.array(vals[0::2]) + 1j * np.array(vals[1::2]))
    if kind is None or len(axes) != 2:
        raise SignalParseError("missing kind or axis header")
    return CoefficientGrid(kind, tuple(axes), np.array(rows))
