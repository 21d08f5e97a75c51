"""Command-line front end.

Exit status: 0 on success or full agreement, 1 when a verification finds a
mismatch, 2 on usage or capacity errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .border import DEFAULT_H, loss_record
from .columns import CapacityError, build_border_system
from .fixed_height import HorizonExceeded, detect_recurrence, gamma, gamma_large_m
from .formulas import Record, SweepReport, compare_sweep, formula_entry
from .oracle import SizeCapExceeded, brute_force_min
from .variants import VARIANTS, get_variant
from .witness import build_2dom_witness, cost, validate

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

# Default sweep windows per suite and variant: (n range, m range).
FORMULA_WINDOWS = {"2dom": ((1, 8), (1, 30)), "roman": ((1, 9), (1, 25)), "dom": ((16, 16), (16, 16))}
LOSS_WINDOWS = {"2dom": (13, 20), "roman": (13, 16), "dom": (16, 16)}
WITNESS_WINDOW = (14, 40)
AUTO_DP_LIMIT = 64


class UsageError(Exception):
    pass


def _emit(obj, as_json: bool) -> None:
    print(json.dumps(obj) if as_json else "\n".join(f"{k}: {v}" for k, v in obj.items()))


# ---- commands ---------------------------------------------------------------

def cmd_solve(args) -> int:
    variant = get_variant(args.variant)
    n, m = sorted((args.n, args.m))
    if args.n < 1 or args.m < 1:
        raise UsageError("grid dimensions must be positive")
    method = args.method
    if method == "auto":
        method = "dp" if m <= AUTO_DP_LIMIT else "recurrence"
    if method == "dp":
        value = gamma(n, m, variant)
    else:
        value = gamma_large_m(detect_recurrence(n, variant), m)
    out = {"variant": variant.key, "n": args.n, "m": args.m, "method": method, "value": value}
    if args.witness:
        if variant.key != "2dom" or not 14 <= n:
            raise UsageError("witness output is only available for 2dom with 14 <= n <= m")
        w = build_2dom_witness(n, m)
        w.save(args.witness, variant)
        out["witness"] = args.witness
    if args.json:
        print(json.dumps(out))
    else:
        print(value)
    return EXIT_OK


def cmd_recurrence(args) -> int:
    rec = detect_recurrence(args.n, args.variant, args.m_max)
    if args.json:
        print(rec.to_json())
    else:
        print(f"{rec.variant} n={rec.n}: gamma(m) = gamma(m-{rec.r}) + {rec.p} for m >= {rec.m0}"
              f" (checked to m={rec.verified_to})")
    return EXIT_OK


def cmd_loss(args) -> int:
    system = build_border_system(args.h, get_variant(args.variant))
    record = loss_record(args.n, args.m, system)
    _emit(record, args.json)
    return EXIT_OK


def cmd_witness(args) -> int:
    n, m = sorted((args.n, args.m))
    w = build_2dom_witness(n, m)
    ok = validate(w, "2dom")
    info = {"n": n, "m": m, "cost": cost(w, "2dom"), "valid": ok, **w.meta}
    if args.out:
        w.save(args.out, "2dom")
        info["out"] = args.out
    else:
        print(w.to_text("2dom"), end="")
    if args.json:
        print(json.dumps(info))
    elif args.out:
        _emit(info, False)
    return EXIT_OK if ok and not w.meta.get("shortfall") else EXIT_MISMATCH


def _oracle_report(variant) -> SweepReport:
    key = get_variant(variant).key
    cap = 12 if key == "roman" else 18
    report = SweepReport(key, "oracle")
    for n in range(1, cap + 1):
        for m in range(n, cap // n + 1):
            try:
                value = gamma(n, m, key)
                truth, witness = brute_force_min(n, m, key)
                good = validate(witness, key) and cost(witness, key) == truth
                report.records.append(Record(n, m, value, truth, value == truth and good, "oracle"))
            except (CapacityError, SizeCapExceeded) as exc:
                report.records.append(Record(n, m, None, None, None, "oracle", error=str(exc)))
    return report


def _run_suite(suite: str, variant: str, window, h: int, threads: int) -> SweepReport:
    if suite == "formulas":
        (n0, n1), (m0, m1) = (window, window) if window else FORMULA_WINDOWS[variant]
        source = "loss" if variant == "dom" else "solver"
        return compare_sweep(variant, range(n0, n1 + 1), range(m0, m1 + 1), source,
                             h=h, workers=threads)
    if suite == "oracle":
        return _oracle_report(variant)
    if suite == "loss":
        lo, hi = window or LOSS_WINDOWS[variant]
        return compare_sweep(variant, range(lo, hi + 1), range(lo, hi + 1), "loss", h=h)
    if suite == "witness":
        if variant != "2dom":
            raise UsageError("the witness suite only exists for 2dom")
        lo, hi = window or WITNESS_WINDOW
        return compare_sweep(variant, range(lo, hi + 1), range(lo, hi + 1), "witness")
    raise UsageError(f"unknown suite {suite}")


def cmd_verify(args) -> int:
    variant = get_variant(args.variant).key
    suites = ["formulas", "oracle", "loss"] + (["witness"] if variant == "2dom" else [])
    if args.suite != "all":
        suites = [args.suite]
    threads = args.threads or os.cpu_count() or 1
    reports = [_run_suite(s, variant, args.window, args.h, threads) for s in suites]
    if args.json:
        print(json.dumps([json.loads(r.to_json()) for r in reports], indent=2))
    elif args.csv:
        for r in reports:
            print(r.to_csv(), end="")
    else:
        for suite, r in zip(suites, reports):
            print(f"== {variant} / {suite} ==")
            print(r.to_text())
            ambiguous = r.summary()["ambiguous_rows"]
            if ambiguous:
                print("note: rows read from an ambiguous table entry: " + "; ".join(ambiguous))
            print("PASS" if r.ok else "FAIL")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_MISMATCH


def cmd_oracle(args) -> int:
    value, witness = brute_force_min(args.n, args.m, args.variant)
    if args.json:
        print(json.dumps({"variant": get_variant(args.variant).key, "n": args.n, "m": args.m,
                          "value": value}))
    else:
        print(witness.to_text(args.variant), end="")
    return EXIT_OK


def cmd_formula(args) -> int:
    entry = formula_entry(args.variant, args.n, args.m)
    _emit({"variant": get_variant(args.variant).key, "n": args.n, "m": args.m,
           "value": entry.value, "branch": entry.branch, "ambiguous": entry.ambiguous}, args.json)
    return EXIT_OK


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="griddom",
                                     description="Domination numbers of grid graphs.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    variants = sorted(VARIANTS)

    p = sub.add_parser("solve", help="exact value for an n x m grid")
    p.add_argument("variant", choices=variants)
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--method", choices=("dp", "recurrence", "auto"), default="auto")
    p.add_argument("--witness", metavar="PATH", help="also write a witness (2dom, n >= 14)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a verification sweep")
    p.add_argument("variant", choices=variants)
    p.add_argument("--suite", choices=("formulas", "oracle", "loss", "witness", "all"),
                   default="all")
    p.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--h", type=int, default=DEFAULT_H)
    p.add_argument("--threads", type=int, default=0)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("recurrence", help="periodicity of gamma(n, .) for fixed n")
    p.add_argument("variant", choices=variants)
    p.add_argument("n", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("loss", help="border loss and lower bound")
    p.add_argument("variant", choices=variants)
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--h", type=int, default=DEFAULT_H)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("witness", help="explicit 2-dominating set (14 <= n <= m)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", help="exhaustive search on a tiny grid")
    p.add_argument("variant", choices=variants)
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("formula", help="closed-form table value")
    p.add_argument("variant", choices=variants)
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_formula)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, CapacityError, SizeCapExceeded, HorizonExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
