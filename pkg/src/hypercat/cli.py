"""Command-line front end: ``hypercat compute|table|verify|ratio|star``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional, Sequence

from . import asymptotics, closed_form, oracle, series
from .verification import run_checks

METHODS = ("closed", "series", "lagrange", "trees", "walks", "auto")
DEFAULT_MAX_WALK_STEPS = 2 * oracle.DEFAULT_MAX_KN
AUTO_WALK_STEPS = 8


class UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return values


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def compute_value(n: int, k: int, method: str, max_walk_steps: int = DEFAULT_MAX_WALK_STEPS) -> int:
    if k < 1 or n < 0:
        raise UsageError("need k >= 1 and n >= 0")
    if method == "auto":
        method = "walks" if 2 * k * n <= AUTO_WALK_STEPS else "lagrange"
    if method == "closed":
        return closed_form.hypergraph_catalan_closed(n, k)
    if method == "series":
        return series.extract_counts(k, n)[n]
    if method == "lagrange":
        return 1 if n == 0 else series.lagrange_extract(n, k)
    if method == "trees":
        return oracle.oracle_by_trees(n, k)
    if method == "walks":
        if 2 * k * n > max_walk_steps:
            raise UsageError(
                f"walk length 2kn = {2 * k * n} exceeds --max-walk-steps {max_walk_steps}"
            )
        return oracle.brute_force_walks(n, k, max_kn=max_walk_steps // 2)
    raise UsageError(f"unknown method {method!r}")


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_compute(args) -> int:
    if args.max_walk_steps != DEFAULT_MAX_WALK_STEPS:
        print(
            f"warning: walk search bound changed to {args.max_walk_steps} steps",
            file=sys.stderr,
        )
    print(compute_value(args.n, args.k, args.method, args.max_walk_steps))
    return 0


def table_rows(ks: Sequence[int], n_max: int):
    for k in ks:
        for n, c in enumerate(series.extract_counts(k, n_max)):
            yield k, n, c


def cmd_table(args) -> int:
    if not args.k:
        raise UsageError("table needs at least one value of k")
    if any(k < 1 for k in args.k):
        raise UsageError("every k must be >= 1")
    rows = list(table_rows(args.k, args.n))
    if args.format == "csv":
        text = _csv(["k", "n", "c"], [(k, n, str(c)) for k, n, c in rows])
    else:
        text = json.dumps([{"k": k, "n": n, "c": str(c)} for k, n, c in rows], indent=1) + "\n"
    _emit(text, args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.level)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.ok]
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def cmd_ratio(args) -> int:
    if args.k < 1 or not args.ns or any(n < 1 for n in args.ns):
        raise UsageError("ratio needs k >= 1 and a list of n >= 1")
    rep = asymptotics.ratio_report(args.k, args.ns)
    rows = [(rep.k, r.n, f"{r.ratio:.12g}", f"{r.abs_delta:.12g}") for r in rep.rows]
    if args.format == "csv":
        text = _csv(["k", "n", "ratio", "abs_delta"], rows)
    else:
        text = json.dumps(
            [{"k": k, "n": n, "ratio": float(r), "abs_delta": float(d)} for k, n, r, d in rows],
            indent=1,
        ) + "\n"
    _emit(text, args.out)
    return 0


def cmd_star(args) -> int:
    if args.k2_sum:
        total, limit = asymptotics.star_sum_k2_check(args.n)
        text = _csv(["n", "star_sum_ratio", "exp_3_2"], [(args.n, f"{total:.12g}", f"{limit:.12g}")])
    else:
        try:
            value = asymptotics.star_count_exact(asymptotics.StarParams(args.n, args.m, args.k))
        except ValueError as exc:
            raise UsageError(str(exc))
        text = f"{value}\n"
    _emit(text, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypercat", description="Exact hypergraph Catalan numbers and their checks."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="print c_n^(k)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-n", type=_nonneg, required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("--max-walk-steps", type=int, default=DEFAULT_MAX_WALK_STEPS,
                   help="largest walk length 2kn allowed for --method walks")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("table", help="c_n^(k) for n = 0..N")
    p.add_argument("-k", type=_int_list, required=True, help="comma-separated k values")
    p.add_argument("-n", type=_nonneg, required=True, help="largest n")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run cross-route and oracle checks")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ratio", help="exact value against the growth formula")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--ns", type=_int_list, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("star", help="k-tours on star-like trees")
    p.add_argument("-k", type=int, default=2)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, default=0)
    p.add_argument("--k2-sum", action="store_true",
                   help="print the summed k=2 star-like ratio next to e^(3/2)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_star)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, oracle.SearchTooLargeError) as exc:
        print(f"hypercat: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hypercat: I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
