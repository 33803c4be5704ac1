"""Command line front end.

Exit codes: 0 success / VALID, 1 usage or input error, 2 domain precondition
(2-torsion x, bad reduction), 3 INCONCLUSIVE, 4 prime scan exhausted.
"""

from __future__ import annotations

import argparse
import csv
import json
import re
import sys
from pathlib import Path

from . import certificate
from .arith import Place, as_fraction, format_fraction
from .elliptic import CurveQ, TwistPoint
from .errors import (
    BadReductionError,
    CertificateError,
    ScanExhaustedError,
    TwistRankError,
    TwoTorsionError,
)
from .kummer import CommonLift, lift_x
from .rankcert import DEFAULT_P, PLACE_SCAN_BOUND, certify_rank, find_certifying_places
from .search import SearchConfig, density_probe, rank_r_twist_search

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_INCONCLUSIVE, EXIT_EXHAUSTED = 0, 1, 2, 3, 4

# let "-a -1/2" parse as a value rather than an option
_NEGATIVE = re.compile(r"^-\d+(/\d+)?$")

DEFAULTS = {
    "p": DEFAULT_P,
    "r": 1,
    "H": 10,
    "scan_bound": PLACE_SCAN_BOUND,
    "max_attempts": 8,
}


class UsageError(Exception):
    pass


def _ints(text):
    if text is None or text == "":
        return []
    return [int(t) for t in str(text).replace(",", " ").split()]


def _parse_point(text: str):
    parts = text.replace("(", "").replace(")", "").split(",")
    if len(parts) != 2:
        raise UsageError(f"malformed point {text!r}; expected x,y")
    try:
        return as_fraction(parts[0]), as_fraction(parts[1])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed point {text!r}: {exc}") from exc


def _read_config(path: str) -> dict:
    values = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _resolve(args: argparse.Namespace):
    """Fill unset options from --config, then from DEFAULTS."""
    if getattr(args, "config", None):
        for key, value in _read_config(args.config).items():
            if not hasattr(args, key):
                raise UsageError(f"unknown config key {key!r}")
            if getattr(args, key) is None:
                setattr(args, key, value)
    for key, value in DEFAULTS.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, value)
    for key in ("p", "r", "H", "d", "scan_bound", "max_attempts"):
        if getattr(args, key, None) is not None:
            try:
                setattr(args, key, int(getattr(args, key)))
            except ValueError as exc:
                raise UsageError(f"--{key}: expected an integer") from exc


def _curve(args) -> CurveQ:
    if args.a is None or args.b is None:
        raise UsageError("curve coefficients -a and -b are required")
    try:
        return CurveQ(as_fraction(args.a), as_fraction(args.b))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def _fmt_point(P: TwistPoint) -> str:
    return f"({P.x}, {P.y})"


def cmd_lift(args, out) -> int:
    E = _curve(args)
    if args.x is None:
        raise UsageError("--x is required")
    try:
        x = as_fraction(args.x)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed x {args.x!r}") from exc
    P = lift_x(E, x).point
    print(f"d = {P.d}", file=out)
    print(f"point = {_fmt_point(P)}", file=out)
    print(f"curve = {P.twisted}", file=out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    E = _curve(args)
    if args.d is None or not args.points:
        raise UsageError("--d and --points are required")
    coords = [_parse_point(t) for t in args.points]
    try:
        points = tuple(TwistPoint(E, args.d, x, y) for x, y in coords)
    except TwistRankError as exc:
        raise UsageError(str(exc)) from exc
    places = _ints(args.places)
    if not places:
        places = find_certifying_places(
            E, args.d, args.p, len(points), avoid=_ints(args.avoid), scan_bound=args.scan_bound
        )
    cert = certify_rank(E, CommonLift(args.d, points), args.p, places, place_scan_bound=args.scan_bound)
    out.write(certificate.dumps(cert))
    return EXIT_OK if cert.is_valid else EXIT_INCONCLUSIVE


def cmd_search(args, out) -> int:
    E = _curve(args)
    config = SearchConfig(
        curve=E,
        r=args.r,
        height_bound=args.H,
        p=args.p,
        exclusions=frozenset(_ints(args.exclude)),
        place_scan_bound=args.scan_bound,
        max_attempts=args.max_attempts,
    )
    result = rank_r_twist_search(config)
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for cert in result.certificates:
            (outdir / f"twist_{cert.twist}.json").write_text(certificate.dumps(cert))
    print(f"# curve: {E}; r={config.r} H={config.height_bound} p={config.p}", file=out)
    print("d\tplaces\tpoints", file=out)
    for cert in result.certificates:
        places = ",".join(str(q) for q in cert.places)
        pts = " ".join(f"({format_fraction(P.x)},{format_fraction(P.y)})" for P in cert.points)
        print(f"{cert.twist}\t{places}\t{pts}", file=out)
    exhausted = ",".join(str(d) for d in result.exhausted) or "none"
    print(
        f"# {len(result.certificates)} VALID of {result.buckets_tried} twists tried "
        f"({result.attempts} attempts); scan exhausted: {exhausted}",
        file=out,
    )
    return EXIT_OK


def cmd_density(args, out) -> int:
    E = _curve(args)
    if not args.places:
        raise UsageError("--places is required")
    try:
        places = [Place.parse(t) for t in str(args.places).replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = density_probe(E, places, args.H)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"place_{v}" for v in places] + ["count"])
    for vec, count in report.class_counts.items():
        writer.writerow(list(vec) + [count])
    for vec in report.missed:
        writer.writerow(list(vec) + [0])
    out.write(f"# total non-2-torsion points: {report.total}; missed vectors: {len(report.missed)}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    text = sys.stdin.read() if args.document == "-" else Path(args.document).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not JSON: {exc}") from exc
    cert = certificate.verify_document(doc)
    print(f"verified: {cert.verdict} (twist {cert.twist}, r={cert.r}, p={cert.p})", file=out)
    return EXIT_OK if cert.is_valid else EXIT_INCONCLUSIVE


def _curve_flags(sp):
    sp.add_argument("-a", help="coefficient a of y^2 = x^3 + a x + b (exact rational)")
    sp.add_argument("-b", help="coefficient b")
    sp.add_argument("--config", help="file of key=value lines using the flag names")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twistrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("lift", help="lift a Kummer x-coordinate to its twist")
    _curve_flags(sp)
    sp.add_argument("--x")
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("certify", help="certify rank >= r for points on E^d")
    _curve_flags(sp)
    sp.add_argument("--d")
    sp.add_argument("--points", nargs="+", help="points on E^d as x,y")
    sp.add_argument("-p")
    sp.add_argument("--places", help="comma-separated primes; found automatically if omitted")
    sp.add_argument("--avoid", help="primes to skip in the place scan")
    sp.add_argument("--scan-bound", dest="scan_bound")
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("search", help="search twists of rank >= r by height")
    _curve_flags(sp)
    sp.add_argument("-r")
    sp.add_argument("-H")
    sp.add_argument("-p")
    sp.add_argument("--exclude", help="twist classes to skip")
    sp.add_argument("--scan-bound", dest="scan_bound")
    sp.add_argument("--max-attempts", dest="max_attempts")
    sp.add_argument("--out", help="directory for certificate documents")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("density", help="tabulate local twist classes of Kummer points")
    _curve_flags(sp)
    sp.add_argument("--places", help="e.g. 5,7,2,real")
    sp.add_argument("-H")
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("verify", help="re-check a certificate document")
    sp.add_argument("document", help="path, or - for stdin")
    sp.set_defaults(func=cmd_verify)

    for p in [parser, *sub.choices.values()]:
        p._negative_number_matcher = _NEGATIVE
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        _resolve(args)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TwoTorsionError:
        print("error: 2-torsion x", file=sys.stderr)
        return EXIT_DOMAIN
    except BadReductionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ScanExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except (CertificateError, TwistRankError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
