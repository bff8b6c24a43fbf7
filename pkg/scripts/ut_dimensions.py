"""Nickel and Jennings dimensions of UT_m in the standard and column-major orders.

    python scripts/ut_dimensions.py --max-m 6
"""

import argparse
import time
from dataclasses import dataclass

from nilembed.jennings import jennings_dimension
from nilembed.nickel import nickel_dimension
from nilembed.presentation import builtin_ut


@dataclass
class Config:
    min_m: int = 3
    max_m: int = 6


def run(cfg):
    print(f"{'m':>2} {'n':>3} {'N standard':>11} {'N column':>9} {'J':>6} {'2^(m//2-1)':>10} {'3^m':>6} {'secs':>6}")
    for m in range(cfg.min_m, cfg.max_m + 1):
        t = time.perf_counter()
        std = builtin_ut(m, "standard")
        col = builtin_ut(m, "column")
        ns, nc = nickel_dimension(std), nickel_dimension(col)
        print(f"{m:>2} {std.n:>3} {ns:>11} {nc:>9} {jennings_dimension(std):>6} "
              f"{2 ** (m // 2 - 1):>10} {3 ** m:>6} {time.perf_counter() - t:>6.1f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-m", type=int, default=Config.min_m)
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    args = ap.parse_args()
    run(Config(args.min_m, args.max_m))


if __name__ == "__main__":
    main()
