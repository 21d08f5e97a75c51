"""Build 2-dominating sets for a window of sizes and report their optimality."""
import argparse
from pathlib import Path

from griddom.witness import build_2dom_witness, cost, validate


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lo", type=int, default=14)
    parser.add_argument("--hi", type=int, default=40)
    parser.add_argument("--out", type=Path, help="directory to save every witness")
    args = parser.parse_args()

    short = []
    for n in range(args.lo, args.hi + 1):
        for m in range(n, args.hi + 1):
            w = build_2dom_witness(n, m)
            size = cost(w, "2dom")
            if not validate(w, "2dom") or w.meta["shortfall"]:
                short.append((n, m, size, w.meta["target"]))
            if args.out:
                args.out.mkdir(parents=True, exist_ok=True)
                w.save(args.out / f"w{n}x{m}.txt")
    print(f"{len(short)} sizes above the optimum: {short}")


if __name__ == "__main__":
    main()
