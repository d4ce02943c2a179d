"""Independent checks: certificates, the weak reflection rule, and a
grid-based brute-force oracle.

Nothing here reuses intermediate data from the searches; a certificate is
recomputed from the raw vertices so that a bug in an LP formulation cannot
silently certify itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .geom import (EPS_CERT, EPS_GEO, ClosedCurve, ConvexPolytope2, Face,
                   GeometryError, cone_distance, ell_length, face_distance,
                   in_f, normal_cone, support_many)
from .pairs import BilliardPair


class LineNotSupporting(GeometryError):
    pass


@dataclass(frozen=True)
class Certificate:
    system_residual: float       # reflection-law cone distances
    face_residual: float         # distance of each vertex to its declared face
    length_residual: float       # |ell_T(q) - sum <q_{j+1}-q_j, p_j>|
    dual_length_residual: float  # |ell_T(q) - ell_{-K}(p)|
    in_f_k: bool
    in_f_t: bool

    @property
    def certified(self) -> bool:
        return (max(self.system_residual, self.face_residual,
                    self.length_residual, self.dual_length_residual) < EPS_CERT
                and self.in_f_k and self.in_f_t)

    def to_json_obj(self) -> dict:
        return {
            "system_residual": self.system_residual,
            "face_residual": self.face_residual,
            "length_residual": self.length_residual,
            "dual_length_residual": self.dual_length_residual,
            "in_f_k": self.in_f_k,
            "in_f_t": self.in_f_t,
            "certified": self.certified,
        }


def certify(K: ConvexPolytope2, T: ConvexPolytope2,
            pair: BilliardPair) -> Certificate:
    q, p = pair.q.vertices, pair.p.vertices
    m = pair.q.m
    sys_res = 0.0
    face_res = 0.0
    inner = 0.0
    for j in range(m):
        dq = q[(j + 1) % m] - q[j]
        dp = p[(j + 1) % m] - p[j]
        sys_res = max(sys_res,
                      cone_distance(normal_cone(T, pair.t_faces[j]), dq),
                      cone_distance(normal_cone(K, pair.k_faces[(j + 1) % m]), -dp))
        face_res = max(face_res,
                       face_distance(K, pair.k_faces[j], q[j]),
                       face_distance(T, pair.t_faces[j], p[j]))
        inner += float(dq @ p[j])
    ell = ell_length(T, pair.q)
    dual = ell_length(K.reflect(), pair.p)
    return Certificate(
        system_residual=sys_res,
        face_residual=face_res,
        length_residual=abs(ell - inner),
        dual_length_residual=abs(ell - dual),
        in_f_k=in_f(K, q),
        in_f_t=in_f(T, p),
    )


def check_weak_rule(K: ConvexPolytope2, T: ConvexPolytope2, q: ClosedCurve,
                    normals: Sequence, resolution: int = 512) -> float:
    """Largest amount by which moving a single vertex along its supporting
    line (sampled at spacing diam(K)/resolution) decreases the two adjacent
    edge lengths.  Nonpositive up to discretization for weak trajectories."""
    v = q.vertices
    m = q.m
    diam = K.diameter()
    h = diam / resolution
    worst = -math.inf
    for j in range(m):
        n = np.asarray(normals[j], float)
        level = float(n @ v[j])
        if float((K.vertices @ n).max()) > level + EPS_GEO:
            raise LineNotSupporting(
                f"line {j} does not support K at its trajectory vertex")
        d = np.array([-n[1], n[0]]) / float(np.hypot(n[0], n[1]))
        ts = np.arange(-resolution, resolution + 1) * h
        samples = v[j] + ts[:, None] * d
        total = (support_many(T, samples - v[(j - 1) % m]) +
                 support_many(T, v[(j + 1) % m] - samples))
        here = (float(support_many(T, (v[j] - v[(j - 1) % m])[None, :])[0]) +
                float(support_many(T, (v[(j + 1) % m] - v[j])[None, :])[0]))
        worst = max(worst, here - float(total.min()))
    return worst


# ---------------------------------------------------------------------------
# brute-force oracle


def boundary_grid(K: ConvexPolytope2, grid_per_facet: int
                  ) -> Tuple[np.ndarray, np.ndarray]:
    """Boundary sample points (vertices plus facet subdivisions) and, per
    point, a bitmask of the facets it lies on."""
    pts = []
    masks = []
    n = K.n
    for i in range(n):
        a, b = K.facet_segment(i)
        pts.append(a)
        masks.append((1 << i) | (1 << ((i - 1) % n)))
        for k in range(1, grid_per_facet):
            pts.append(a + (k / grid_per_facet) * (b - a))
            masks.append(1 << i)
    return np.asarray(pts), np.asarray(masks, np.int64)


_OK_CACHE: Dict[bytes, np.ndarray] = {}


def _subset_immovable_table(K: ConvexPolytope2) -> np.ndarray:
    """ok[mask] == True iff 0 lies in the convex hull of the facet normals
    selected by mask.  For points on the boundary this is exactly the
    margin-LP criterion of in_f, by LP duality."""
    key = K.normals.tobytes()
    tab = _OK_CACHE.get(key)
    if tab is not None:
        return tab
    n = K.n
    if n > 16:
        raise GeometryError("brute-force oracle supports at most 16 facets")
    angles = np.arctan2(K.normals[:, 1], K.normals[:, 0])
    tab = np.zeros(1 << n, bool)
    for mask in range(1, 1 << n):
        sel = sorted(angles[i] for i in range(n) if mask >> i & 1)
        if len(sel) == 1:
            continue
        gap = max(sel[k + 1] - sel[k] for k in range(len(sel) - 1))
        gap = max(gap, 2 * math.pi - (sel[-1] - sel[0]))
        tab[mask] = gap <= math.pi + 1e-12
    _OK_CACHE[key] = tab
    return tab


def brute_force_min(K: ConvexPolytope2, T: ConvexPolytope2, m: int,
                    grid_per_facet: int) -> float:
    """Minimum ell_T-length over closed m-gons with vertices on the boundary
    grid of K that cannot be translated into the interior."""
    if m not in (2, 3):
        raise ValueError("only m = 2 and m = 3 are supported")
    pts, masks = boundary_grid(K, grid_per_facet)
    ok = _subset_immovable_table(K)
    N = pts.shape[0]
    G = pts @ T.vertices.T  # (N, |V(T)|); support of a difference is a max over columns
    scale2 = max(1.0, K.diameter() ** 2)
    if m == 2:
        sup = (G[None, :, :] - G[:, None, :]).max(axis=2)  # sup[i,j] = h_T(x_j - x_i)
        pairmask = masks[:, None] | masks[None, :]
        d = pts[:, None, :] - pts[None, :, :]
        dist2 = (d ** 2).sum(axis=2)
        valid = ok[pairmask] & (dist2 > (EPS_GEO ** 2) * scale2)
        lengths = np.where(valid, sup + sup.T, np.inf)
        return float(lengths.min())

    best = np.inf
    sup = (G[None, :, :] - G[:, None, :]).max(axis=2)
    for i in range(N - 2):
        idx = np.arange(i + 1, N)
        tm = ok[(masks[i] | masks[idx])[:, None] | masks[idx][None, :]]
        di = pts[idx] - pts[i]
        # noncollinearity of the triangle (i, j, k)
        crossjk = np.abs(di[:, 0][:, None] * di[:, 1][None, :]
                         - di[:, 1][:, None] * di[:, 0][None, :])
        valid = tm & (crossjk > EPS_GEO * scale2)
        if not valid.any():
            continue
        L = (sup[i, idx][:, None] + sup[np.ix_(idx, idx)] + sup[idx, i][None, :])
        cand = float(np.where(valid, L, np.inf).min())
        best = min(best, cand)
    return best
