"""Command line entry point: ``rhind2d {table,trials,select,search,verify}``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 cascade failure.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from . import formats as fmt
from .arithmetic import is_prime
from .enumeration import trials3, trials4, two_term
from .generalsearch import general_search
from .selection import (
    DOMAIN,
    SelectionError,
    TopFlags,
    apply_topflag,
    reconstruct,
)
from .tablecore import ground_truth

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CASCADE = 3


class UsageError(Exception):
    pass


def _primes(lo: int, hi: int) -> list[int]:
    return [p for p in range(lo, hi + 1) if is_prime(p)]


def _flags(args: argparse.Namespace) -> TopFlags:
    try:
        return TopFlags(
            tf3=args.topflag3,
            tf4=args.topflag4,
            tf3_relaxed=args.topflag3_relaxed,
            borderline_m3_max=args.borderline_max,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_d(d: int) -> None:
    if d not in DOMAIN or not is_prime(d):
        raise UsageError(f"--d must be a prime between 3 and 97, got {d}")


def cmd_table(args: argparse.Namespace) -> int:
    if not (3 <= args.min <= args.max <= 97):
        raise UsageError(f"need 3 <= min <= max <= 97, got min={args.min} max={args.max}")
    flags = _flags(args)
    outcomes = [reconstruct(D, flags) for D in _primes(args.min, args.max)]
    if args.format == "json":
        rows = [fmt.outcome_to_dict(o) for o in outcomes]
        if not args.trace:
            for r in rows:
                del r["rationale"], r["transition"]
        sys.stdout.write(fmt.dump_json({"rows": rows}))
    elif args.format == "csv":
        header = list(fmt.OUTCOME_HEADER)
        rows = [fmt.outcome_row(o) for o in outcomes]
        if not args.trace:
            header.pop()
            rows = [r[:-1] for r in rows]
        sys.stdout.write(fmt.dump_csv(header, rows))
    else:
        for o in outcomes:
            line = fmt.render_decomposition(o.chosen)
            if args.trace:
                line += "    [" + ", ".join(str(r) for r in o.rationale) + "]"
            print(line)
    return EXIT_OK


def cmd_trials(args: argparse.Namespace) -> int:
    _check_d(args.d)
    rows = trials3(args.d) if args.terms == 3 else trials4(args.d)
    if args.topflag is not None:
        rows = apply_topflag(rows, args.topflag)
    if args.sort == "delta":
        rows = sorted(rows, key=lambda t: (t.delta, t.n, t.parts))
    if args.format == "json":
        sys.stdout.write(fmt.dump_json({"D": args.d, "terms": args.terms, "rows": [fmt.trial_to_dict(t) for t in rows]}))
    elif args.format == "csv":
        sys.stdout.write(fmt.dump_csv(fmt.TRIAL_HEADER, [fmt.trial_row(t) for t in rows]))
    else:
        header = ("n", "2n+1", "parts", "delta", "D1", "decomposition")
        body = [
            (t.n, t.odd_sum, ",".join(map(str, t.parts)), t.delta, t.head, fmt.render_decomposition(t.decomposition))
            for t in rows
        ]
        sys.stdout.write(fmt.text_table(header, body))
    return EXIT_OK


def cmd_select(args: argparse.Namespace) -> int:
    _check_d(args.d)
    outcome = reconstruct(args.d, _flags(args))
    if args.format == "json":
        sys.stdout.write(fmt.dump_json(fmt.outcome_to_dict(outcome)))
        return EXIT_OK
    if args.format == "csv":
        sys.stdout.write(fmt.dump_csv(fmt.OUTCOME_HEADER, [fmt.outcome_row(outcome)]))
        return EXIT_OK
    print(fmt.render_decomposition(outcome.chosen))
    if args.explain:
        print("rationale: " + " -> ".join(str(r) for r in outcome.rationale))
        if outcome.topflag_used is not None:
            print(f"topflag: {outcome.topflag_used}")
        t = outcome.transition
        if t is not None:
            if t.shared_denominator is None:
                print(f"transition: no shared denominator ({t.appreciation})")
            else:
                print(
                    f"transition: shared denominator {t.shared_denominator}, "
                    f"rank3={t.rank3}, rank4={t.rank4}, appreciation={t.appreciation}"
                )
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    if args.d < 3 or not is_prime(args.d):
        raise UsageError(f"--d must be an odd prime, got {args.d}")
    if args.topflag < 2:
        raise UsageError("--topflag must be >= 2")
    if args.general:
        decs = [s.to_decomposition() for s in general_search(args.d, args.terms, args.topflag)]
    elif args.terms == 2:
        decs = [two_term(args.d)]
    else:
        rows = trials3(args.d) if args.terms == 3 else trials4(args.d)
        decs = [t.decomposition for t in apply_topflag(rows, args.topflag)]
    if args.format == "json":
        sys.stdout.write(fmt.dump_json({"D": args.d, "solutions": [fmt.decomposition_to_dict(d) for d in decs]}))
    elif args.format == "csv":
        header = ("D", "denominators", "multipliers", "parts")
        rows = [(d.D, fmt.join_dens(d.denominators), fmt.join_list(d.multipliers), fmt.join_list(d.parts)) for d in decs]
        sys.stdout.write(fmt.dump_csv(header, rows))
    else:
        for d in decs:
            print(fmt.render_decomposition(d))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    flags = _flags(args)
    truth = ground_truth()
    report = []
    for D, expected in truth.items():
        try:
            outcome = reconstruct(D, flags)
        except SelectionError as exc:
            report.append((D, expected, None, str(exc)))
            continue
        report.append((D, expected, outcome, None))
    matches = sum(1 for _, exp, out, _ in report if out is not None and out.chosen.denominators == exp.denominators)
    total = len(report)

    def same(exp, out) -> bool:
        return out is not None and out.chosen.denominators == exp.denominators

    if args.format == "json":
        rows = [
            {
                "D": D,
                "expected": list(exp.denominators),
                "actual": None if out is None else list(out.chosen.denominators),
                "match": same(exp, out),
                "rationale": None if out is None else [str(r) for r in out.rationale],
                "error": err,
            }
            for D, exp, out, err in report
        ]
        sys.stdout.write(fmt.dump_json({"matches": matches, "total": total, "rows": rows}))
    elif args.format == "csv":
        header = ("D", "expected", "actual", "match", "rationale", "error")
        rows = [
            (
                D,
                fmt.join_dens(exp.denominators),
                None if out is None else fmt.join_dens(out.chosen.denominators),
                "yes" if same(exp, out) else "no",
                None if out is None else fmt.join_list(out.rationale),
                err,
            )
            for D, exp, out, err in report
        ]
        sys.stdout.write(fmt.dump_csv(header, rows))
    else:
        for D, exp, out, err in report:
            status = "ok" if same(exp, out) else "MISMATCH"
            actual = err if out is None else fmt.join_dens(out.chosen.denominators)
            print(f"2/{D:<3} {status:<8} expected {fmt.join_dens(exp.denominators):<20} actual {actual}")
        print(f"{matches}/{total} match")
    return EXIT_OK if matches == total else EXIT_MISMATCH


def _add_flag_overrides(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("top-flag overrides")
    g.add_argument("--topflag3", type=int, default=10, help="last-multiplier bound for 3 terms")
    g.add_argument("--topflag4", type=int, default=10, help="last-multiplier bound for 4 terms")
    g.add_argument("--topflag3-relaxed", type=int, default=15, help="bound for a 3-term row kept after the transition analysis")
    g.add_argument("--borderline-max", type=int, default=16, help="largest m3 that triggers the transition analysis")


def _add_format(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=fmt.FORMATS, default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rhind2d", description="Reconstruct the Egyptian 2/D table for prime D.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="reconstructed table for a range of primes")
    p.add_argument("--min", type=int, default=3)
    p.add_argument("--max", type=int, default=97)
    p.add_argument("--trace", action="store_true", help="include rationale tags")
    _add_format(p)
    _add_flag_overrides(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("trials", help="trial table for one prime")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--terms", type=int, choices=(3, 4), default=3)
    p.add_argument("--topflag", type=int, default=None)
    p.add_argument("--sort", choices=("n", "delta"), default="n")
    _add_format(p)
    p.set_defaults(func=cmd_trials)

    p = sub.add_parser("select", help="selected decomposition for one prime")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--explain", action="store_true")
    _add_format(p)
    _add_flag_overrides(p)
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("search", help="flag-bounded solutions, optionally without the divisor constraint")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--terms", type=int, choices=(2, 3, 4), default=3)
    p.add_argument("--topflag", type=int, default=10)
    p.add_argument("--general", action="store_true", help="allow any multipliers, not only divisor-derived ones")
    _add_format(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="compare the reconstruction with the papyrus table")
    _add_format(p)
    _add_flag_overrides(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except SelectionError as exc:
        print(f"error: {exc} (D={exc.D})", file=sys.stderr)
        return EXIT_CASCADE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
