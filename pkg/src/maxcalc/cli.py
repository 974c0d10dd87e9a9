"""Command-line entry point: ``maxcalc run|series|catalog|trace``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EngineError
from .generators import catalog, surface_betti
from .script import parse, render_series, run


def _load(path: str):
    return parse(Path(path).read_text(encoding="utf-8"))


def cmd_run(args) -> int:
    report = run(_load(args.file), strict=args.strict, q_trunc=args.trunc)
    sys.stdout.write(report.text)
    return report.exit_code


def cmd_series(args) -> int:
    if args.upto > args.trunc:
        print(f"error: upto={args.upto} exceeds --trunc {args.trunc}", file=sys.stderr)
        return 2
    print("\n".join(render_series(surface_betti(args.surface), args.upto, args.surface)))
    return 0


def cmd_catalog(args) -> int:
    print(f"{'id':<12} {'dim':>3} {'complex':>8} {'real':>6}  maximal")
    for p in catalog():
        ct = "?" if p.complex_total is None else p.complex_total
        rt = "?" if p.real_total is None else p.real_total
        print(f"{p.id:<12} {p.dim:>3} {ct:>8} {rt:>6}  {p.maximal}")
    return 0


def cmd_trace(args) -> int:
    report = run(_load(args.file), strict=args.strict, q_trunc=args.trunc)
    if report.exit_code == 2:
        sys.stdout.write(report.text)
        return 2
    for line in report.session.trace(args.var):
        print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxcalc", description="Maximality calculus for real varieties.")
    ap.add_argument("--trunc", type=int, default=16, help="series truncation order (default 16)")
    ap.add_argument("--strict", action="store_true", help="treat recorded rule assumptions as errors")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a script and print its report")
    p.add_argument("file")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("series", help="Hilbert-scheme Betti series of a surface")
    p.add_argument("--surface", required=True, help="catalog name or b0,b1,b2,b3,b4")
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("catalog", help="list the built-in profiles")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("trace", help="print the proof trace of one variety")
    p.add_argument("file")
    p.add_argument("--var", required=True)
    p.set_defaults(func=cmd_trace)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EngineError, ValueError, OSError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
