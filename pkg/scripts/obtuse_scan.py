#!/usr/bin/env python3
"""Scan random obtuse triangles against n-gon geometries: existence of a
regular 3-bounce trajectory should always agree with membership in the
family determined by the quarter-turned triangle.

Usage: python scripts/obtuse_scan.py [--trials 50] [--ngon 32] [--seed 0]
"""

import argparse
import math

import numpy as np

from minkbill.fixtures import regular_ngon
from minkbill.geom import ConvexPolytope2
from minkbill.obtuse import in_family_t, largest_angle, regular_three_bounce_exists


def random_triangle(rng):
    while True:
        pts = rng.normal(size=(3, 2)) * 2
        try:
            tri = ConvexPolytope2.from_vertices(pts)
            return tri
        except Exception:
            pts = pts[::-1]
            try:
                return ConvexPolytope2.from_vertices(pts)
            except Exception:
                continue


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--ngon", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    T = regular_ngon(args.ngon)
    agree = 0
    obtuse_with = 0
    obtuse_total = 0
    for _ in range(args.trials):
        tri = random_triangle(rng)
        exists = regular_three_bounce_exists(tri, T)
        member, _ = in_family_t(tri, T)
        ang = math.degrees(largest_angle(tri))
        if exists == member:
            agree += 1
        if ang > 90:
            obtuse_total += 1
            obtuse_with += exists
        print(f"angle {ang:7.2f}  exists={exists!s:5}  in_family={member!s:5}")
    print(f"\nagreement: {agree}/{args.trials}")
    if obtuse_total:
        print(f"obtuse triangles with a regular 3-bounce vs the {args.ngon}-gon: "
              f"{obtuse_with}/{obtuse_total}")


if __name__ == "__main__":
    main()
