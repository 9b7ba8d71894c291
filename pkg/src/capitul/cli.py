"""``capitul`` command line: verify one pair, scan a range, run the self-test."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial

from .arith import is_prime
from .capitulation import InvalidPair, eligibility
from .report import CHECKS, PairReport, render, render_csv, run_pair
from .selftest import CHECKS as SELFTEST_CHECKS
from .selftest import run_selftest

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class _Usage(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_checks(spec: str | None) -> tuple[str, ...]:
    if spec is None or spec == "all":
        return CHECKS
    if spec in ("", "none"):
        return ()
    names = tuple(s.strip() for s in spec.split(",") if s.strip())
    bad = [n for n in names if n not in CHECKS]
    if bad:
        raise _Usage(f"unknown check(s) {', '.join(bad)}; choose from {', '.join(CHECKS)}")
    return names


def eligible_pairs(limit: int) -> list[tuple[int, int]]:
    """Ordered eligible pairs with both primes <= limit, p1 ascending then p2."""
    primes = [p for p in range(5, limit + 1, 4) if is_prime(p)]
    return [(a, b) for a in primes for b in primes if a != b and eligibility(a, b).eligible]


def cmd_verify(args: argparse.Namespace) -> int:
    p1 = args.p1 if args.p1 is not None else args.P1
    p2 = args.p2 if args.p2 is not None else args.P2
    if p1 is None or p2 is None:
        raise _Usage("verify needs two primes (positional or --p1/--p2)")
    try:
        rep = run_pair(p1, p2, checks=_parse_checks(args.checks), prec=args.prec, timings=args.timings)
    except InvalidPair as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not rep.eligible:
        print(f"ineligible: {rep.reason}", file=sys.stderr)
        return EXIT_INVALID
    _emit(render(rep, args.format), args.out)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _scan_text(reports: list[PairReport]) -> str:
    head = f"{'p1':>5} {'p2':>5} {'q3':>2} {'ker_K1':>8} {'ker_K2':>8} {'ker_K3':>8} {'ker_genus':>12}  overall"
    lines = [head]
    for r in reports:
        k = r.kernels
        cell = lambda t: k.get(t, {}).get("computed", "-")  # noqa: E731
        lines.append(
            f"{r.pair[0]:>5} {r.pair[1]:>5} {r.q3.get('q', '-'):>2} {cell('K1'):>8} {cell('K2'):>8} "
            f"{cell('K3'):>8} {cell('k*'):>12}  {r.overall}"
        )
    return "\n".join(lines) + "\n"


def _summary(reports: list[PairReport]) -> str:
    n = len(reports)
    ok = sum(r.passed for r in reports)
    if n == 0:
        return "0 pairs"
    return f"{n} pairs, {ok} PASS, {n - ok} FAIL"


def cmd_scan(args: argparse.Namespace) -> int:
    limit = args.limit if args.limit is not None else args.LIMIT
    if limit is None:
        raise _Usage("scan needs a limit (positional or --limit)")
    if limit < 5:
        raise _Usage("limit must be at least 5")
    pairs = eligible_pairs(limit)
    job = partial(_run_star, checks=_parse_checks(args.checks), prec=args.prec, timings=args.timings)
    if args.jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(job, pairs, chunksize=4))
    else:
        reports = [job(p) for p in pairs]
    summary = _summary(reports)
    if args.format == "csv":
        _emit(render_csv(reports), args.out)
        print(summary, file=sys.stderr)
    elif args.format == "json":
        doc = {"schema": 1, "limit": limit, "summary": summary, "reports": [r.to_dict() for r in reports]}
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        _emit(_scan_text(reports) + summary + "\n", args.out)
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


def _run_star(pair: tuple[int, int], **kw) -> PairReport:
    return run_pair(*pair, **kw)


def cmd_selftest(args: argparse.Namespace) -> int:
    if args.list:
        print("\n".join(SELFTEST_CHECKS))
        return EXIT_PASS
    bad = [n for n in args.names if n not in SELFTEST_CHECKS]
    if bad:
        raise _Usage(f"unknown selftest check(s): {', '.join(bad)}")
    results = run_selftest(args.names or None)
    for name, msg in results:
        print(f"{name:24s} {'PASS' if msg is None else 'FAIL'}" + ("" if msg is None else f"  {msg}"))
    ok = all(m is None for _, m in results)
    print(f"selftest: {'PASS' if ok else 'FAIL'}")
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="capitul",
        description="Verify 2-class capitulation data for Q(sqrt(2 p1 p2), i).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--checks", metavar="LIST",
                        help=f"comma list of sub-checks to run (default all: {','.join(CHECKS)})")
    common.add_argument("--prec", type=int, default=256, metavar="BITS",
                        help="starting precision for the numeric regulator step (doubles up to 4096)")
    common.add_argument("--timings", action="store_true", help="record per-stage wall times (breaks byte-identical output)")

    v = sub.add_parser("verify", parents=[common], help="full pipeline for one ordered pair")
    v.add_argument("P1", type=int, nargs="?")
    v.add_argument("P2", type=int, nargs="?")
    v.add_argument("--p1", type=int)
    v.add_argument("--p2", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("scan", parents=[common], help="all ordered eligible pairs up to a bound")
    s.add_argument("LIMIT", type=int, nargs="?")
    s.add_argument("--limit", type=int)
    s.add_argument("--jobs", type=int, default=1, metavar="N")
    s.set_defaults(func=cmd_scan)

    t = sub.add_parser("selftest", help="fixed oracle and identity suite")
    t.add_argument("names", nargs="*", help="subset of checks (default all)")
    t.add_argument("--list", action="store_true", help="list check names and exit")
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"capitul: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
