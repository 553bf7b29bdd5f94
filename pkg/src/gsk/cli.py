"""Command-line front end: ``gsk verify | transform | orbits | dump-atlas``.

Exit codes: 0 success, 1 failed checks or other library error, 2 usage,
3 unparseable or empty input, 4 inadmissible window for ``--reconstruct``,
5 orbit chart singularity.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dual_orbits as D
from . import groups as G
from . import transforms as T
from .embeddings import direct_embeddings, flowchart_atlas
from .errors import (ChartSingularityError, DomainError, GSKError, InadmissibleWindowError,
                     SignalParseError)
from .io import fmt, format_coefficients, read_signal
from .verify import SUITES, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE, EXIT_WINDOW, EXIT_CHART = 0, 1, 2, 3, 4, 5


class _Usage(Exception):
    pass


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gsk", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run seeded invariant suites")
    v.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=_positive_int, default=1000)
    v.add_argument("--json-out")

    t = sub.add_parser("transform", help="transform a signal file into a coefficient CSV")
    t.add_argument("--kind", required=True, choices=["cwt", "stft", "stockwell"])
    t.add_argument("--in", dest="in_path", required=True)
    t.add_argument("--out")
    t.add_argument("--window", default="morlet", choices=["morlet", "mexican-hat", "gaussian"])
    t.add_argument("--center", type=float)
    t.add_argument("--width", type=float, default=1.0)
    t.add_argument("--n-scales", type=_positive_int, default=64)
    t.add_argument("--f-min", type=float)
    t.add_argument("--f-max", type=float)
    t.add_argument("--n-freq", type=_positive_int)
    t.add_argument("--hop", type=_positive_int)
    t.add_argument("--sigma-t", type=float, help="STFT Gaussian std in seconds")
    t.add_argument("--boundary", default=T.PERIODIC, choices=[T.PERIODIC, T.ZERO])
    t.add_argument("--reconstruct", action="store_true",
                   help="(cwt) synthesize back and print the relative L2 error")

    o = sub.add_parser("orbits", help="random-walk orbit trajectory as CSV")
    o.add_argument("--group", required=True, choices=["gaff", "gs", "gms", "heis"])
    o.add_argument("--point", required=True, help="comma-separated dual point")
    o.add_argument("--steps", type=_positive_int, default=100)
    o.add_argument("--seed", type=int, default=0)
    o.add_argument("--kappa", type=float, help="GMS central character q")
    o.add_argument("--M", type=float, default=1.0)
    o.add_argument("--boosts-only", action="store_true", help="walk with sigma = tau = 0")
    o.add_argument("--out")

    a = sub.add_parser("dump-atlas", help="descriptor and embedding atlas as JSON")
    a.add_argument("--M", type=float, default=1.0)
    a.add_argument("--p", type=float, default=0.5)
    a.add_argument("--out")
    return ap


def cmd_verify(args) -> int:
    if args.suite != "all" and args.suite not in SUITES:
        raise _Usage(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}, all")
    report = run_verify(args.suite, args.seed, args.samples)
    sys.stdout.write(report.table() + "\n")
    if args.json_out:
        _emit(report.to_json() + "\n", args.json_out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_transform(args) -> int:
    signal = read_signal(args.in_path)
    kind = args.kind.upper()
    if args.reconstruct and kind != T.CWT:
        raise _Usage("--reconstruct is only available for --kind cwt")
    if kind == T.CWT:
        window = T.WindowSpec(args.window, args.center, args.width)
        if args.reconstruct:
            T.admissibility_constant(window)
        f_min = args.f_min if args.f_min is not None else 1.0 / signal.duration
        f_max = args.f_max if args.f_max is not None else 0.5 / signal.dt
        scales = T.scale_grid(window, f_min, f_max, args.n_scales)
        coeffs = T.cwt(signal, window, scales, args.boundary)
    elif kind == T.STFT:
        coeffs = T.stft(signal, args.sigma_t, args.hop, n_freq=args.n_freq, boundary=args.boundary)
    else:
        coeffs = T.stockwell(signal, n_freq=args.n_freq, boundary=args.boundary)
    if args.out:
        _emit(format_coefficients(coeffs), args.out)
    if args.reconstruct:
        rec = T.cwt_synthesize(coeffs, window)
        err = T.relative_l2_error(rec.samples, signal.samples)
        sys.stdout.write(f"relative L2 error: {err:.6e}\n")
    elif not args.out:
        sys.stdout.write(format_coefficients(coeffs))
    return EXIT_OK


def _orbit_point(args) -> D.DualPoint:
    try:
        coords = [float(x) for x in args.point.split(",")]
    except ValueError:
        raise _Usage(f"cannot parse --point {args.point!r}") from None
    group = args.group.upper()
    if group == "GMS":
        if len(coords) == 2:
            coords = [1.0 if args.kappa is None else args.kappa] + coords
        elif len(coords) == 3 and args.kappa is not None and coords[0] != args.kappa:
            raise _Usage(f"--kappa {args.kappa} disagrees with the point's q = {coords[0]}")
    return D.DualPoint(group, tuple(coords), args.M)


def _orbit_row_coords(x: D.DualPoint) -> tuple[float, float]:
    # GAFF and HEIS report the raw coordinates, GS and GMS their orbit charts
    if x.group == "GS":
        return D.to_orbit_coords(x)
    if x.group == "GMS":
        if abs(x.coords[0]) <= D.ZERO_TOL:
            raise ChartSingularityError("GMS orbit chart is singular at q = 0")
        return D.to_orbit_coords(x)
    return x.coords


def cmd_orbits(args) -> int:
    x = _orbit_point(args)
    label = D.orbit_id(x)
    walk = [x] if label.cls == D.DEGENERATE else D.orbit_walk(x, args.steps, args.seed,
                                                                args.boosts_only)
    lines = ["step,coord1,coord2,label"]
    for k, y in enumerate(walk):
        c1, c2 = _orbit_row_coords(y)
        lines.append(f"{k},{fmt(c1)},{fmt(c2)},{D.orbit_id(y)}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_dump_atlas(args) -> int:
    doc = {
        "groups": [d.describe() for d in G.bundled_descriptors(M=args.M, p=args.p)],
        "embeddings": [{"source": e.source.id, "target": e.target.id, "note": e.note}
                       for e in flowchart_atlas(args.M, args.p) + direct_embeddings(args.M)],
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


_COMMANDS = {"verify": cmd_verify, "transform": cmd_transform, "orbits": cmd_orbits,
             "dump-atlas": cmd_dump_atlas}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"gsk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SignalParseError as exc:
        print(f"gsk: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InadmissibleWindowError as exc:
        print(f"gsk: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except ChartSingularityError as exc:
        print(f"gsk: {exc}", file=sys.stderr)
        return EXIT_CHART
    except OSError as exc:
        print(f"gsk: {exc}", file=sys.stderr)
        return EXIT_PARSE if getattr(exc, "filename", None) == getattr(args, "in_path", 0) else EXIT_FAIL
    except DomainError as exc:
        print(f"gsk: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GSKError as exc:
        print(f"gsk: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
