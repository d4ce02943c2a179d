#!/usr/bin/env python3
"""Timing grid for both searches over random instances.

Usage: python scripts/run_bench.py [--sizes 5,15,25] [--seed 0] [--out bench.json]
"""

import argparse
import json

from minkbill.cli import run_bench


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="5,15,25")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=8)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()
    res = run_bench([int(s) for s in args.sizes.split(",")], args.seed,
                    samples=args.samples)
    print(f"{'|V(K)|':>7} {'|V(T)|':>7} {'2-bounce':>10} {'3-bounce':>10}")
    for row in res["rows"]:
        print(f"{row['nk']:>7} {row['nt']:>7} "
              f"{row['two_bounce_s']:>9.3f}s {row['three_bounce_s']:>9.3f}s")
    print(f"3-bounce rank corr with |V(K)|: {res['three_bounce_rank_corr_nk']:.3f}")
    print(f"3-bounce rank corr with |V(T)|: {res['three_bounce_rank_corr_nt']:.3f}")
    print(f"2-bounce symmetry rank corr:    {res['two_bounce_symmetry_corr']:.3f}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(res, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
