"""Compare exact values with the closed-form tables and write CSV reports."""
import argparse
from dataclasses import dataclass
from pathlib import Path

from griddom.formulas import compare_sweep


@dataclass
class Window:
    variant: str
    n: tuple[int, int]
    m: tuple[int, int]


WINDOWS = (Window("2dom", (1, 8), (1, 30)), Window("roman", (1, 9), (1, 25)))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, help="directory for per-variant CSV files")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    for w in WINDOWS:
        report = compare_sweep(w.variant, range(w.n[0], w.n[1] + 1),
                               range(w.m[0], w.m[1] + 1), workers=args.workers)
        s = report.summary()
        print(f"{w.variant}: {s['checked']} pairs, {s['mismatches']} mismatches,"
              f" {s['ambiguous_mismatches']} on ambiguous rows, {s['no_formula']} uncovered")
        for r in report.mismatches:
            print(f"   {r.n}x{r.m}: exact {r.computed}, table {r.formula}  ({r.branch})")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / f"{w.variant}.csv").write_text(report.to_csv())


if __name__ == "__main__":
    main()
