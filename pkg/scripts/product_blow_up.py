"""Dimensions of direct products Z^k x Fil(c): Nickel adds up, Jennings multiplies out.

    python scripts/product_blow_up.py --k 4 --c 4
"""

import argparse
from dataclasses import dataclass
from math import comb

from nilembed.jennings import jennings_dimension
from nilembed.nickel import nickel_dimension
from nilembed.presentation import builtin_filiform, builtin_free_abelian, direct_product


@dataclass
class Config:
    k: int = 4
    c: int = 4


def run(cfg):
    print(f"{'k':>2} {'c':>2} {'N(A)':>5} {'N(B)':>5} {'N(AxB)':>7} {'J(A)':>5} {'J(B)':>5} "
          f"{'J(AxB)':>7} {'C(k+c,c)':>9}")
    for k in range(1, cfg.k + 1):
        for c in range(2, cfg.c + 1):
            A, B = builtin_free_abelian(k), builtin_filiform(c)
            AB = direct_product(A, B)
            print(f"{k:>2} {c:>2} {nickel_dimension(A):>5} {nickel_dimension(B):>5} "
                  f"{nickel_dimension(AB):>7} {jennings_dimension(A):>5} {jennings_dimension(B):>5} "
                  f"{jennings_dimension(AB):>7} {comb(k + c, c):>9}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=Config.k)
    ap.add_argument("--c", type=int, default=Config.c)
    args = ap.parse_args()
    run(Config(args.k, args.c))


if __name__ == "__main__":
    main()
