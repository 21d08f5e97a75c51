"""Detect the fixed-height recurrences gamma(n, m) = gamma(n, m - r) + p."""
import argparse
import json
import time
from dataclasses import asdict, dataclass

from griddom.fixed_height import detect_recurrence


@dataclass
class Config:
    variant: str = "2dom"
    n_min: int = 1
    n_max: int = 8


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--variant", default=Config.variant)
    parser.add_argument("--n-min", type=int, default=Config.n_min)
    parser.add_argument("--n-max", type=int, default=Config.n_max)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()
    cfg = Config(args.variant, args.n_min, args.n_max)

    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        start = time.perf_counter()
        rec = detect_recurrence(n, cfg.variant)
        row = {"n": n, "m0": rec.m0, "r": rec.r, "p": rec.p, "verified_to": rec.verified_to,
               "seconds": round(time.perf_counter() - start, 2)}
        rows.append(row)
        if not args.json:
            print(f"n={n:>2}: for m >= {rec.m0:>3}, gamma(m) = gamma(m-{rec.r}) + {rec.p}"
                  f"   [checked to {rec.verified_to}, {row['seconds']} s]", flush=True)
    if args.json:
        print(json.dumps({"config": asdict(cfg), "relations": rows}, indent=2))


if __name__ == "__main__":
    main()
