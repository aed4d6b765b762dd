"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 internal contract breach
(solver or surface assembly).
"""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .chain import ChainError, parse_chain, parse_group
from .experiments import (
    RandomChainSpec,
    SweepSpec,
    check_finite_approx,
    histogram,
    histogram_csv,
    parse_range,
    sample_scl,
    samples_csv,
    sweep,
    sweep_csv,
)
from .lp import lp_dims, lp_to_text
from .scl import compute_scl, format_rational
from .simplex import SolverError
from .surface import SurfaceError, export, verify_extremal

__all__ = ["main", "build_parser", "run"]


def _words(args) -> list[str]:
    words = list(args.words or [])
    if args.chain:
        words.append(args.chain)
    if not words:
        raise ChainError("no words given; pass words as arguments or use --chain 'w1+w2'")
    return words


def _write(path: str, data: bytes | str) -> None:
    if isinstance(data, str):
        data = data.encode()
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _cmd_scl(args) -> int:
    res = compute_scl(parse_group(args.group), _words(args), warm_start=args.warm_start)
    if args.lp:
        _write(args.lp, lp_to_text(res.lp) if res.lp else "")
    if args.verbose:
        rows, cols, nnz = lp_dims(res.lp)
        print(f"chain: {res.chain or '(empty)'}")
        print(f"lp: {rows} rows, {cols} columns, {nnz} nonzeros")
        if res.solution is not None:
            s = res.solution
            print(f"pivots: {s.pivots} (phase 1: {s.phase1_pivots}), warm start: {s.warm_started}")
            print("basis: " + " ".join(map(str, s.basis)))
    if args.command == "surface":
        surface = res.surface()
        if args.surface:
            _write(args.surface, export(surface, "json"))
        if args.dot:
            _write(args.dot, export(surface, "dot"))
        if args.verbose or not (args.surface or args.dot):
            print(f"scale {surface.scale}, euler {surface.euler}, "
                  f"{len(surface.instances)} pieces, {len(surface.boundary_cycles)} boundary components")
    print(format_rational(res.value))
    return 0


def _cmd_check(args) -> int:
    group = parse_group(args.group)
    words = _words(args)
    res = compute_scl(group, words, warm_start=args.warm_start)
    report = verify_extremal(res.surface(), res.solution)
    ok = report.passed
    print(f"scl = {format_rational(res.value)}")
    for line in report.lines():
        print(line)
    try:
        parse_chain(group.free_cover(), words)
    except ChainError as exc:
        print(f"SKIP finite_approx ({exc})")
    else:
        fa = check_finite_approx(words, group, warm_start=args.warm_start)
        print(f"{'PASS' if fa.holds else 'FAIL'} finite_approx {fa}")
        ok = ok and fa.holds
    return 0 if ok else 2


def _cmd_sweep(args) -> int:
    ranges = dict(parse_range(r) for r in args.range)
    spec = SweepSpec(_words(args), ranges, warm_start=args.warm_start)
    rows = sweep(spec, jobs=args.jobs)
    text = sweep_csv(rows)
    _write(args.csv or "-", text)
    return 1 if any(r.error and r.error.startswith("ChainError") for r in rows) else 0


def _cmd_histogram(args) -> int:
    spec = RandomChainSpec(args.group, args.length, args.count, args.seed)
    samples = sample_scl(spec, jobs=args.jobs, warm_start=args.warm_start)
    if args.samples:
        _write(args.samples, samples_csv(samples))
    rows = histogram([s.value for s in samples if s.value is not None], args.bin)
    _write(args.csv or "-", histogram_csv(rows))
    return 2 if any(s.error for s in samples) else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="scylla",
        description="Exact stable commutator length in free products of cyclic groups.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-g", "--group", required=True, help="group, e.g. a3b2 (order 0 = infinite)")
    common.add_argument("--warm-start", action=argparse.BooleanOptionalAction, default=True,
                        help="seed the exact simplex with a floating-point basis (default on)")
    common.add_argument("-v", "--verbose", action="store_true")
    words = argparse.ArgumentParser(add_help=False)
    words.add_argument("words", nargs="*", help="words of the chain; upper case = inverse")
    words.add_argument("--chain", help="chain as one string, 'w1+w2'")

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("scl", parents=[common, words], help="print scl of a chain")
    s.add_argument("--lp", metavar="PATH", help="write the LP in text form ('-' for stdout)")
    s = sub.add_parser("surface", parents=[common, words], help="scl plus an extremal surface")
    s.add_argument("--surface", metavar="PATH", help="write the surface as JSON")
    s.add_argument("--dot", metavar="PATH", help="write the spine graph as DOT")
    s.add_argument("--lp", metavar="PATH", help=argparse.SUPPRESS)
    sub.add_parser("check", parents=[common, words],
                   help="verify the extracted surface and the finite-approximation inequality")

    s = sub.add_parser("sweep", parents=[words], help="scl over a grid of orders, as CSV")
    s.add_argument("-r", "--range", action="append", required=True, metavar="SYM=LO:HI",
                   help="orders for one generator, e.g. a=2:6 or b=0; repeat per generator")
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("-j", "--jobs", type=int, default=1)
    s.add_argument("--warm-start", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("-v", "--verbose", action="store_true")

    s = sub.add_parser("histogram", help="scl histogram of random words, as CSV")
    s.add_argument("-g", "--group", required=True)
    s.add_argument("--length", type=int, default=8)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--bin", default="1/12", help="bin width, a rational such as 1/12")
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--samples", metavar="PATH", help="also write per-word values as CSV")
    s.add_argument("-j", "--jobs", type=int, default=1)
    s.add_argument("--warm-start", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("-v", "--verbose", action="store_true")
    return p


_COMMANDS = {
    "scl": _cmd_scl,
    "surface": _cmd_scl,
    "check": _cmd_check,
    "sweep": _cmd_sweep,
    "histogram": _cmd_histogram,
}


def run(args: argparse.Namespace) -> int:
    try:
        return _COMMANDS[args.command](args)
    except ChainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SolverError, SurfaceError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
