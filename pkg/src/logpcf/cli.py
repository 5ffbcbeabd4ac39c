"""Command-line entry point: ``logpcf <subcommand> ...``.

Data goes to stdout (or ``--output``); diagnostics go to stderr.
Exit codes: 0 success, 1 failed verification, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import harness, theory
from .paircorr import CSV_DIGITS, CurveTable, PcfQuery, pcf_curve, pcf_fast
from .seq import empirical_gaps, generate, generate_shifted, theoretical_gaps

OUTPUT_DIR_ENV = "LOGPCF_OUTPUT_DIR"
DEFAULT_N = 1000
DEFAULT_S_RANGE = "0:5:0.05"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SRange:
    lo: float
    hi: float
    step: float

    @classmethod
    def parse(cls, text: str) -> "SRange":
        try:
            lo, hi, step = (float(v) for v in text.split(":"))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo:hi:step, got {text!r}") from None
        if not (lo <= hi and step > 0 and lo >= 0):
            raise argparse.ArgumentTypeError(f"need 0 <= lo <= hi and step > 0, got {text!r}")
        return cls(lo, hi, step)

    def grid(self) -> np.ndarray:
        count = int(np.floor((self.hi - self.lo) / self.step + 1e-9)) + 1
        return np.round(self.lo + self.step * np.arange(count), 12)


def _num(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), f".{CSV_DIGITS}g")


def _rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([v if isinstance(v, str) else _num(v) for v in r])
    return buf.getvalue()


def _rows_json(header, rows) -> str:
    return json.dumps([dict(zip(header, r)) for r in rows], indent=2)


def _emit_rows(args, header, rows) -> None:
    rows = [[float(v) if isinstance(v, (float, np.floating)) else v for v in r] for r in rows]
    _emit(args, _rows_json(header, rows) if args.format == "json" else _rows_csv(header, rows))


def _emit_table(args, table: CurveTable) -> None:
    _emit(args, table.to_json() if args.format == "json" else table.to_csv())


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.output:
        path = Path(args.output)
        base = os.environ.get(OUTPUT_DIR_ENV)
        if base and not path.is_absolute():
            path = Path(base) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _s_grid(args) -> np.ndarray:
    if getattr(args, "s", None) is not None:
        return np.array([args.s])
    return args.s_range.grid()


def cmd_generate(args) -> int:
    ps = generate_shifted(args.n) if args.shifted else generate(args.n)
    if args.format == "json":
        _emit(args, json.dumps({"n_points": ps.n_points, "source": ps.source.value,
                                "points": [float(v) for v in ps.points]}, indent=2))
    else:
        _emit_rows(args, ["i", "x"], [(i + 1, v) for i, v in enumerate(ps.points)])
    return 0


def cmd_gaps(args) -> int:
    if args.theoretical:
        prof = theoretical_gaps(args.n)
    else:
        if args.n < 2:
            raise UsageError("empirical gaps need --n >= 2")
        prof = empirical_gaps(generate(args.n))
    _emit_rows(args, ["i", "gap"], [(i + 1, g) for i, g in enumerate(prof.gaps)])
    return 0


def cmd_pcf(args) -> int:
    if args.n < 2:
        raise UsageError("pcf needs --n >= 2")
    _emit_table(args, pcf_curve(generate(args.n), _s_grid(args), args.alpha))
    return 0


def cmd_limit(args) -> int:
    grid = _s_grid(args)
    _emit_table(args, CurveTable(grid, {"F": [theory.f_limit(s) for s in grid]}, {"function": "F"}))
    return 0


def cmd_bounds(args) -> int:
    if args.n < 2:
        raise UsageError("bounds needs --n >= 2")
    header = ["N", "s", "lower", "upper", "k_max", "k_min", "k_tilde", "c"]
    rows = []
    ps = generate(args.n) if args.empirical else None
    for s in _s_grid(args):
        cert = theory.fn_bounds(args.n, float(s))
        row = [args.n, float(s), cert.lower, cert.upper, cert.counts.k_max,
               cert.counts.k_min, cert.k_tilde, cert.counts.c]
        if ps is not None:
            f = pcf_fast(ps, PcfQuery(float(s)))
            row += [f, "yes" if cert.contains(f) else "no"]
        rows.append(row)
    if ps is not None:
        header += ["F_N", "inside"]
    _emit_rows(args, header, rows)
    return 0


def cmd_weak(args) -> int:
    if args.n < 2:
        raise UsageError("weak needs --n >= 2")
    alphas = args.alpha or [0.5]
    for a in alphas:
        if not 0 <= a < 1:
            raise UsageError(f"--alpha must lie in [0, 1), got {a}")
    grid = args.s_range.grid()
    if grid.size and grid[0] == 0:
        grid = grid[1:]
    _emit_table(args, harness.run_weak_study(args.n, alphas, grid))
    return 0


def cmd_fixed_points(args) -> int:
    roots = theory.fixed_points(args.s_max)
    rows = [(float(s), theory.f_limit(s), abs(theory.f_limit(s) - 2 * s)) for s in roots]
    _emit_rows(args, ["s", "F", "residual"], rows)
    return 0


def cmd_verify(args) -> int:
    suites = harness.SUITES if args.suite == "all" else (args.suite,)
    reports = []
    for name in suites:
        rep = harness.run_suite(name)
        reports.append(rep)
        print(rep.summary(), file=sys.stderr)
        for c in rep.failures()[:10]:
            print(f"  failed: {c.inputs} observed={c.observed!r} expected={c.expected!r}", file=sys.stderr)
    if args.format == "json":
        _emit(args, json.dumps([r.to_dict() for r in reports], indent=2, ensure_ascii=False))
    else:
        _emit_rows(args, ["suite", "passed", "failed", "status"],
                   [(r.name, r.pass_count, r.fail_count, "PASS" if r.ok else "FAIL") for r in reports])
    return 0 if all(r.ok for r in reports) else 1


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected N >= 1, got {v}")
    return v


def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"expected a value >= 0, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help=f"write to this file (relative paths resolve under ${OUTPUT_DIR_ENV})")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    p = argparse.ArgumentParser(prog="logpcf", description="Pair correlation statistics of {log2(2n-1)}.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_n(sp):
        sp.add_argument("--n", type=_positive_int, default=DEFAULT_N)

    def with_s(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--s", type=_nonneg_float)
        g.add_argument("--s-range", type=SRange.parse, default=SRange.parse(DEFAULT_S_RANGE), metavar="LO:HI:STEP")

    sp = sub.add_parser("generate", parents=[common], help="print the first N points, sorted")
    with_n(sp)
    sp.add_argument("--shifted", action="store_true", help="ascending-gap rotation with y_1 = 0")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("gaps", parents=[common], help="circular gaps")
    with_n(sp)
    sp.add_argument("--theoretical", action="store_true", help="use the 2-adic gap formula")
    sp.set_defaults(func=cmd_gaps)

    sp = sub.add_parser("pcf", parents=[common], help="empirical F_N(s) or F_N^alpha(s)")
    with_n(sp)
    with_s(sp)
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.set_defaults(func=cmd_pcf)

    sp = sub.add_parser("limit", parents=[common], help="limit function F(s)")
    with_s(sp)
    sp.set_defaults(func=cmd_limit)

    sp = sub.add_parser("bounds", parents=[common], help="finite-N bounds on F_N(s)")
    with_n(sp)
    with_s(sp)
    sp.add_argument("--empirical", action="store_true", help="also count F_N(s) and report containment")
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("weak", parents=[common], help="weak (alpha) correlation study")
    with_n(sp)
    sp.add_argument("--alpha", type=float, action="append", help="repeatable; default 0.5")
    sp.add_argument("--s-range", type=SRange.parse, default=SRange.parse(DEFAULT_S_RANGE), metavar="LO:HI:STEP")
    sp.set_defaults(func=cmd_weak)

    sp = sub.add_parser("fixed-points", parents=[common], help="solutions of F(s) = 2s")
    sp.add_argument("--s-max", type=_nonneg_float, default=100.0)
    sp.set_defaults(func=cmd_fixed_points)

    sp = sub.add_parser("verify", parents=[common], help="run verification suites")
    sp.add_argument("--suite", choices=(*harness.SUITES, "all"), default="all")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "alpha", None) is not None and not isinstance(args.alpha, list):
        if not 0 <= args.alpha <= 1:
            parser.error(f"--alpha must lie in [0, 1], got {args.alpha}")
    try:
        return args.func(args)
    except (UsageError, ValueError) as e:
        print(f"logpcf {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
