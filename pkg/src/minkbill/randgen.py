"""Seeded random instance generation.

Vertices are drawn as normally distributed directions rescaled to uniform
lengths; the draw is repeated until the convex hull has exactly the
requested number of vertices.  For large vertex counts the radius interval
is narrowed towards its upper end (points close to a common circle are all
extreme), which keeps the rejection loop short."""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from .geom import ConvexPolytope2, GeometryError, InvalidPolytope, convex_hull


class GenerationExhausted(RuntimeError):
    pass


def random_polytope(rng: np.random.Generator, n: int,
                    interval: Optional[Tuple[float, float]] = None,
                    max_tries: int = 1000) -> ConvexPolytope2:
    if n < 3:
        raise ValueError("need at least three vertices")
    if interval is None:
        interval = (1.0, 3.0) if n < 30 else (2.5, 3.0)
    lo, hi = interval
    for attempt in range(max_tries):
        if attempt and attempt % 50 == 0:
            lo = 0.5 * (lo + hi)  # shrink towards the circle, keeps hulls full
        dirs = rng.normal(size=(n, 2))
        norms = np.hypot(dirs[:, 0], dirs[:, 1])
        good = norms > 1e-12
        dirs = dirs[good] / norms[good, None]
        radii = rng.uniform(lo, hi, size=dirs.shape[0])
        pts = dirs * radii[:, None]
        try:
            hull = convex_hull(pts)
            if hull.shape[0] != n:
                continue
            return ConvexPolytope2.from_vertices(hull)
        except (GeometryError, InvalidPolytope):
            continue
    raise GenerationExhausted(
        f"no {n}-vertex polytope after {max_tries} attempts")


def random_instance(rng: np.random.Generator, n_k: int, n_t: int
                    ) -> Tuple[ConvexPolytope2, ConvexPolytope2]:
    """A body K and a geometry T; T is recentred so the origin is interior
    (required for its gauge; lengths are unaffected by translating K)."""
    K = random_polytope(rng, n_k)
    T = random_polytope(rng, n_t)
    if T.origin_interior_margin() <= 1e-6:
        T = T.translate(-T.centroid())
    return K, T
