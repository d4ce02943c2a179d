"""Command-line interface.

Subcommands operate on polytope JSON files ({"vertices": [[x, y], ...]},
counterclockwise) and emit a versioned JSON report.  Everything is
deterministic for a fixed seed, and reports round-trip through `verify`.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__
from .bounce2 import SearchStats, search_two_bounce
from .bounce3 import search_three_bounce
from .fixtures import UnknownFixture, load as load_fixture
from .geom import (ClosedCurve, ConvexPolytope2, Face, GeometryError,
                   InvalidCurve, InvalidPolytope)
from .obtuse import in_family_t, largest_angle, regular_three_bounce_exists
from .pairs import BilliardPair, sort_pairs
from .randgen import GenerationExhausted, random_instance, random_polytope
from .verify import brute_force_min, certify
from .fixtures import regular_ngon

REPORT_SCHEMA = "minkowski-billiards-report/1"


def _load_polytope(path: str, tol: Optional[float] = None) -> ConvexPolytope2:
    with open(path) as fh:
        obj = json.load(fh)
    if tol is None:
        return ConvexPolytope2.from_json_obj(obj)
    return ConvexPolytope2.from_json_obj(obj, tol=tol)


def _dump_json(obj, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out is None or out == "-":
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _face_obj(f: Face) -> list:
    return [f.kind, f.index]


def _face_from_obj(obj) -> Face:
    return Face(str(obj[0]), int(obj[1]))


def _pair_obj(K, T, pair: BilliardPair) -> dict:
    cert = certify(K, T, pair)
    return {
        "m": pair.q.m,
        "length": pair.length,
        "q": [[float(x), float(y)] for x, y in pair.q.vertices],
        "p": [[float(x), float(y)] for x, y in pair.p.vertices],
        "k_faces": [_face_obj(f) for f in pair.k_faces],
        "t_faces": [_face_obj(f) for f in pair.t_faces],
        "lambdas": list(pair.lambdas),
        "mus": list(pair.mus),
        "certificate": cert.to_json_obj(),
    }


def _search_report(K: ConvexPolytope2, T: ConvexPolytope2, samples: int,
                   bounce_counts: Sequence[int]) -> dict:
    timings: Dict[str, float] = {}
    candidates: List[BilliardPair] = []
    if 2 in bounce_counts:
        t0 = time.perf_counter()
        candidates += search_two_bounce(K, T)
        timings["two_bounce_s"] = time.perf_counter() - t0
    if 3 in bounce_counts:
        t0 = time.perf_counter()
        candidates += search_three_bounce(K, T, samples=samples)
        timings["three_bounce_s"] = time.perf_counter() - t0
    candidates = sort_pairs(candidates)
    report = {
        "schema": REPORT_SCHEMA,
        "version": __version__,
        "bounce_counts": sorted(bounce_counts),
        "K": K.to_json_obj(),
        "T": T.to_json_obj(),
        "candidates": [_pair_obj(K, T, pr) for pr in candidates],
        "min": candidates[0].length if candidates else None,
        "argmin": _pair_obj(K, T, candidates[0]) if candidates else None,
        "timings": timings,
    }
    return report


def cmd_shortest(args) -> int:
    K = _load_polytope(args.K, args.tol)
    T = _load_polytope(args.T, args.tol)
    report = _search_report(K, T, args.samples, (2, 3))
    if args.grid:
        t0 = time.perf_counter()
        report["oracle"] = {
            "grid": args.grid,
            "two_bounce_min": brute_force_min(K, T, 2, args.grid),
            "three_bounce_min": brute_force_min(K, T, 3, args.grid),
        }
        report["timings"]["oracle_s"] = time.perf_counter() - t0
    _dump_json(report, args.out)
    return 0 if report["min"] is not None else 1


def cmd_two_bounce(args) -> int:
    K = _load_polytope(args.K, args.tol)
    T = _load_polytope(args.T, args.tol)
    report = _search_report(K, T, args.samples, (2,))
    _dump_json(report, args.out)
    return 0


def cmd_three_bounce(args) -> int:
    K = _load_polytope(args.K, args.tol)
    T = _load_polytope(args.T, args.tol)
    report = _search_report(K, T, args.samples, (3,))
    _dump_json(report, args.out)
    return 0


def cmd_verify(args) -> int:
    with open(args.report) as fh:
        report = json.load(fh)
    if report.get("schema") != REPORT_SCHEMA:
        raise GeometryError(f"unrecognized report schema {report.get('schema')!r}")
    K = ConvexPolytope2.from_json_obj(report["K"])
    T = ConvexPolytope2.from_json_obj(report["T"])
    from .pairs import make_pair
    all_ok = True
    rows = []
    for i, cand in enumerate(report["candidates"]):
        pair = make_pair(K, T, np.asarray(cand["q"]), np.asarray(cand["p"]),
                         [_face_from_obj(f) for f in cand["k_faces"]],
                         [_face_from_obj(f) for f in cand["t_faces"]])
        if pair is None:
            rows.append({"index": i, "certified": False,
                         "error": "degenerate curve data"})
            all_ok = False
            continue
        cert = certify(K, T, pair)
        ok = cert.certified and abs(pair.length - cand["length"]) < 1e-9
        rows.append({"index": i, "certified": ok,
                     "certificate": cert.to_json_obj()})
        all_ok = all_ok and ok
    _dump_json({"schema": REPORT_SCHEMA, "verified": all_ok,
                "candidates": rows}, args.out)
    return 0 if all_ok else 1


def cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    K, T = random_instance(rng, args.nk, args.nt)
    _dump_json(K.to_json_obj(), args.out_k)
    _dump_json(T.to_json_obj(), args.out_t)
    return 0


def _spearman(a: np.ndarray, b: np.ndarray) -> float:
    def ranks(x):
        order = np.argsort(x, kind="stable")
        r = np.empty(len(x))
        r[order] = np.arange(len(x))
        return r
    ra, rb = ranks(np.asarray(a, float)), ranks(np.asarray(b, float))
    ra -= ra.mean()
    rb -= rb.mean()
    denom = float(np.sqrt((ra ** 2).sum() * (rb ** 2).sum()))
    return float((ra * rb).sum() / denom) if denom else 0.0


def _best_of(fn, repeats: int):
    """Best-of-N wall time for a deterministic callable."""
    best = math.inf
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return result, best


def run_bench(sizes: Sequence[int], seed: int, samples: int = 8,
              repeats: int = 3) -> dict:
    """Time both searches on a grid of random instance sizes."""
    rng = np.random.default_rng(seed)
    rows = []
    for nk in sizes:
        for nt in sizes:
            K, T = random_instance(rng, nk, nt)
            two, t2 = _best_of(lambda: search_two_bounce(K, T), repeats)
            three, t3 = _best_of(
                lambda: search_three_bounce(K, T, samples=samples), repeats)
            rows.append({"nk": nk, "nt": nt,
                         "two_bounce_s": t2, "three_bounce_s": t3,
                         "two_bounce_found": len(two),
                         "three_bounce_found": len(three)})
    t3s = np.array([r["three_bounce_s"] for r in rows])
    nks = np.array([r["nk"] for r in rows], float)
    nts = np.array([r["nt"] for r in rows], float)
    by = {(r["nk"], r["nt"]): r["two_bounce_s"] for r in rows}
    sym_a = np.array([by[(a, b)] for a in sizes for b in sizes])
    sym_b = np.array([by[(b, a)] for a in sizes for b in sizes])
    return {
        "schema": "minkowski-billiards-bench/1",
        "seed": seed,
        "sizes": list(sizes),
        "rows": rows,
        "three_bounce_rank_corr_nk": _spearman(t3s, nks),
        "three_bounce_rank_corr_nt": _spearman(t3s, nts),
        "two_bounce_symmetry_corr": _spearman(sym_a, sym_b),
    }


def cmd_bench(args) -> int:
    sizes = [int(s) for s in args.sizes.split(",")]
    result = run_bench(sizes, args.seed, samples=args.samples)
    _dump_json(result, args.out)
    return 0


def cmd_obtuse(args) -> int:
    if args.triangle:
        tri = _load_polytope(args.triangle)
    else:
        tri = load_fixture("obtuse100").K
    ngons = [int(s) for s in args.ngons.split(",")]
    rows = []
    for n in ngons:
        T = regular_ngon(n)
        exists = regular_three_bounce_exists(tri, T, samples=args.samples)
        member, witness = in_family_t(tri, T, samples=args.samples)
        rows.append({
            "ngon": n,
            "regular_three_bounce_exists": exists,
            "in_family": member,
            "witness": None if witness is None else {
                "rotation": witness.rotation,
                "scale": witness.scale,
                "shift": [float(c) for c in witness.shift],
                "vertices": [[float(x), float(y)] for x, y in witness.vertices],
            },
        })
    _dump_json({
        "schema": "minkowski-billiards-obtuse/1",
        "triangle": tri.to_json_obj(),
        "largest_angle_deg": float(np.degrees(largest_angle(tri))),
        "rows": rows,
    }, args.out)
    return 0


def render_svg(report: dict) -> str:
    """Deterministic SVG: K with the winning trajectory, T with its dual."""
    K = ConvexPolytope2.from_json_obj(report["K"])
    T = ConvexPolytope2.from_json_obj(report["T"])
    argmin = report.get("argmin")

    def panel(body, curve, x0, color):
        lo = body.vertices.min(axis=0)
        hi = body.vertices.max(axis=0)
        span = float(max(hi - lo))
        scale = 360.0 / span

        def pt(p):
            x = x0 + 20 + (p[0] - lo[0]) * scale
            y = 380 - (p[1] - lo[1]) * scale
            return f"{x:.3f},{y:.3f}"

        parts = ["<polygon points=\"%s\" fill=\"none\" stroke=\"black\"/>"
                 % " ".join(pt(v) for v in body.vertices)]
        if curve is not None:
            parts.append(
                "<polygon points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"2\"/>"
                % (" ".join(pt(v) for v in curve), color))
            for v in curve:
                x, y = pt(v).split(",")
                parts.append(f"<circle cx=\"{x}\" cy=\"{y}\" r=\"3\" fill=\"{color}\"/>")
        return parts

    q = np.asarray(argmin["q"]) if argmin else None
    p = np.asarray(argmin["p"]) if argmin else None
    body = []
    body += panel(K, q, 0, "#c0392b")
    body += panel(T, p, 420, "#2980b9")
    label = ("min length %.6f (m=%d)" % (report["min"], argmin["m"])
             if argmin else "no certified trajectory")
    body.append(f'<text x="20" y="20" font-family="monospace">{label}</text>')
    return ("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"840\" height=\"420\">"
            + "".join(body) + "</svg>")


def cmd_plot(args) -> int:
    with open(args.report) as fh:
        report = json.load(fh)
    svg = render_svg(report)
    with open(args.out, "w") as fh:
        fh.write(svg + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minkbill",
        description="length-minimizing closed billiard trajectories in "
                    "polytopal Minkowski geometries")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, samples=True):
        if samples:
            p.add_argument("--samples", type=int, default=8,
                           help="fan size for vertex normal cones (default 8)")
        p.add_argument("--tol", type=float, default=None,
                       help="input validation tolerance (default 1e-9)")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for interface compatibility; execution "
                            "is sequential to stay deterministic")
        p.add_argument("--out", default=None, help="output file (default stdout)")

    p = sub.add_parser("shortest", help="run both searches, report the minimum")
    p.add_argument("K")
    p.add_argument("T")
    p.add_argument("--grid", type=int, default=None,
                   help="also run the brute-force oracle at this resolution")
    common(p)
    p.set_defaults(func=cmd_shortest)

    p = sub.add_parser("two-bounce", help="all certified 2-bounce trajectories")
    p.add_argument("K")
    p.add_argument("T")
    common(p)
    p.set_defaults(func=cmd_two_bounce)

    p = sub.add_parser("three-bounce", help="all certified 3-bounce trajectories")
    p.add_argument("K")
    p.add_argument("T")
    common(p)
    p.set_defaults(func=cmd_three_bounce)

    p = sub.add_parser("verify", help="re-certify the candidates of a report")
    p.add_argument("report")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("nk", type=int)
    p.add_argument("nt", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-k", default="K.json")
    p.add_argument("--out-t", default="T.json")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing grid over random instances")
    p.add_argument("--sizes", default="5,15,25")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("obtuse", help="triangle 3-bounce existence vs. n-gons")
    p.add_argument("--triangle", default=None, help="triangle JSON (default: "
                   "the built-in obtuse example)")
    p.add_argument("--ngons", default="16,64,256")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_obtuse)

    p = sub.add_parser("plot", help="render a report as SVG")
    p.add_argument("report")
    p.add_argument("out")
    p.set_defaults(func=cmd_plot)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GeometryError, InvalidPolytope, InvalidCurve, UnknownFixture,
            GenerationExhausted, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
