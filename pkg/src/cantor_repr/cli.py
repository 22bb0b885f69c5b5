"""Command-line entry point: ``cantor-repr {represent,verify,embed}``.

Exit status: 0 on success, 1 when a point cannot be represented or a
verification check fails, 2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from decimal import Decimal
from fractions import Fraction

from .compiler import enumerate_table, represent_point, table_doc
from .errors import CantorError, PatternError
from .oracle import SuiteConfig, literal_two_level_family, run_suite
from .pattern import parse_pattern, parse_points
from .sequence import cmts_value

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

FAULTS = {"literal-subdivision": literal_two_level_family}


class UsageError(Exception):
    pass


def _positive(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def fixed(value: Fraction, digits: int) -> str:
    """``value`` to ``digits`` decimal places, rounding half to even, exactly."""
    scaled = round(value * 10**digits)
    return f"{Decimal(scaled).scaleb(-digits):.{digits}f}"


def cmd_represent(args) -> int:
    pattern = parse_pattern(_read(args.pattern))
    if args.points is None:
        if args.samples is None:
            raise UsageError("represent needs --points or --samples")
        rows = enumerate_table(pattern, args.samples)
        failures = []
    else:
        rows, failures = [], []
        for q in parse_points(_read(args.points)):
            try:
                rows.append(represent_point(pattern, q))
            except CantorError as exc:
                failures.append(f"{q}: {exc}")
    _emit(json.dumps(table_doc(rows), indent=2) + "\n", args.out)
    for line in failures:
        print(f"unresolvable point {line}", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_verify(args) -> int:
    cfg = SuiteConfig(depth=args.depth, corpus=args.corpus or None)
    if args.samples is not None:
        cfg.sample_denominator = args.samples
    if args.inject_fault:
        cfg.inject_families = {args.inject_fault: FAULTS[args.inject_fault]()}
    try:
        report = run_suite(cfg)
    except CantorError as exc:
        raise UsageError(str(exc)) from None
    _emit(report.to_json() + "\n", args.out)
    print(report.to_text(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_FAIL


def embed_rows(pattern, samples: int, precision: int):
    for entry in enumerate_table(pattern, samples):
        q = entry.point
        path = ".".join(map(str, q.path))
        where = f"node:{q.node}" if q.is_node else f"arc:{q.arc}"
        t = "" if q.is_node else f"{q.t.numerator}/{q.t.denominator}"
        for x in entry.fiber:
            h = cmts_value(x)
            yield [path, where, t, str(x), f"{h.numerator}/{h.denominator}", fixed(h, precision)]


def cmd_embed(args) -> int:
    if args.samples is None:
        raise UsageError("embed needs --samples")
    pattern = parse_pattern(_read(args.pattern))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["path", "location", "t", "sequence", "cmts", "decimal"])
    writer.writerows(embed_rows(pattern, args.samples, args.precision))
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor-repr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("represent", help="compile query points (or a sample table) to fibers")
    rep.add_argument("--pattern", required=True)
    rep.add_argument("--points")
    rep.add_argument("--samples", type=_positive(2), help="sample denominator for the full table")
    rep.add_argument("--out")
    rep.set_defaults(func=cmd_represent)

    ver = sub.add_parser("verify", help="run the invariant suite")
    ver.add_argument("--depth", type=_positive(1), default=12)
    ver.add_argument("--samples", type=_positive(2), help="sample denominator for corpus tables")
    ver.add_argument("--corpus", nargs="+", help="pattern files replacing the bundled corpus")
    ver.add_argument("--out")
    ver.add_argument("--inject-fault", choices=sorted(FAULTS), help=argparse.SUPPRESS)
    ver.set_defaults(func=cmd_verify)

    emb = sub.add_parser("embed", help="CSV of middle-thirds coordinates for a sample table")
    emb.add_argument("--pattern", required=True)
    emb.add_argument("--samples", type=_positive(2))
    emb.add_argument("--precision", type=_positive(1), default=6)
    emb.add_argument("--out")
    emb.set_defaults(func=cmd_embed)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except PatternError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CantorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
