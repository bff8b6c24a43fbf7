"""Nickel and Jennings dimensions of the Heisenberg groups H_m against 2m + 2 and 2m^2 + 3m + 2.

    python scripts/heisenberg_family.py --max-m 6
"""

import argparse
from dataclasses import dataclass

from nilembed.jennings import jennings_dimension, jennings_matrices
from nilembed.nickel import nickel_dimension, nickel_embedding
from nilembed.presentation import builtin_heisenberg
from nilembed.verify import verify_representation


@dataclass
class Config:
    max_m: int = 5
    audit: bool = False
    samples: int = 50


def run(cfg):
    print(f"{'m':>2} {'n':>3} {'N':>4} {'2m+2':>5} {'J':>5} {'2m^2+3m+2':>10}  audit")
    for m in range(1, cfg.max_m + 1):
        P = builtin_heisenberg(m)
        N, J = nickel_dimension(P), jennings_dimension(P)
        audit = ""
        if cfg.audit:
            ok = all(verify_representation(P, R, cfg.samples).ok
                     for R in (nickel_embedding(P), jennings_matrices(P)))
            audit = "ok" if ok else "FAIL"
        print(f"{m:>2} {P.n:>3} {N:>4} {2 * m + 2:>5} {J:>5} {2 * m * m + 3 * m + 2:>10}  {audit}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=Config.max_m)
    ap.add_argument("--audit", action="store_true", help="also verify both embeddings")
    ap.add_argument("--samples", type=int, default=Config.samples)
    args = ap.parse_args()
    run(Config(args.max_m, args.audit, args.samples))


if __name__ == "__main__":
    main()
