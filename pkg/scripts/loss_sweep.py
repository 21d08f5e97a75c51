"""Border lower bounds over a square window, compared with the closed forms."""
import argparse
import time

from griddom.border import LossEvaluator
from griddom.columns import build_border_system
from griddom.formulas import formula_entry


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("variant", nargs="?", default="2dom")
    parser.add_argument("--h", type=int, default=6)
    parser.add_argument("--lo", type=int, default=13)
    parser.add_argument("--hi", type=int, default=20)
    args = parser.parse_args()

    start = time.perf_counter()
    system = build_border_system(args.h, args.variant)
    print(f"{args.variant} h={args.h}: {len(system)} band states,"
          f" built in {time.perf_counter() - start:.1f} s")
    ev = LossEvaluator(system)
    off = 0
    for n in range(args.lo, args.hi + 1):
        for m in range(n, args.hi + 1):
            bound = ev.lower_bound(n, m)
            table = formula_entry(args.variant, n, m).value
            flag = "" if table is None or bound == table else "  <- differs"
            off += bool(flag)
            print(f"{n:>3} {m:>3}  loss {ev.loss(n, m):>5}  bound {bound:>5}  table {table}{flag}")
    print(f"{off} pairs differ; {time.perf_counter() - start:.1f} s total")


if __name__ == "__main__":
    main()
