"""Planar convex polytopes, support functions, polars, normal cones.

Everything downstream (the two searches, the verifier, the brute-force
oracle) is built from the primitives in this module, so tolerances are
explicit arguments with shared defaults rather than hidden magic numbers.

Conventions: polytopes are given by their vertices in counterclockwise
order; facet ``i`` joins vertex ``i`` to vertex ``i+1`` and its outer unit
normal is the clockwise quarter-turn of the edge direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .lp import Constraint, LinearProgram, solve

EPS_GEO = 1e-9    # geometric tolerance (coincidence, membership)
EPS_ANG = 1e-9    # angular tolerance, radians
EPS_CERT = 1e-7   # certification threshold for trajectory residuals


class GeometryError(ValueError):
    pass


class InvalidPolytope(GeometryError):
    pass


class OriginNotInterior(GeometryError):
    pass


class ZeroVector(GeometryError):
    pass


class InvalidCurve(GeometryError):
    pass


def vec(x: float, y: float) -> np.ndarray:
    return np.array([float(x), float(y)])


def cross2(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


def rot90cw(a) -> np.ndarray:
    return np.array([float(a[1]), -float(a[0])])


def rot90ccw(a) -> np.ndarray:
    return np.array([-float(a[1]), float(a[0])])


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def unit(a, tol: float = EPS_GEO) -> np.ndarray:
    a = np.asarray(a, float)
    n = float(np.hypot(a[0], a[1]))
    if n <= tol:
        raise ZeroVector("cannot normalize a (near-)zero vector")
    return a / n


def segment_distance(a, b, x) -> float:
    """Euclidean distance from point x to the closed segment [a, b]."""
    a = np.asarray(a, float)
    d = np.asarray(b, float) - a
    dd = float(d @ d)
    if dd == 0.0:
        return float(np.hypot(*(x - a)))
    t = float(np.clip((np.asarray(x, float) - a) @ d / dd, 0.0, 1.0))
    return float(np.hypot(*(a + t * d - x)))


@dataclass(frozen=True)
class ConvexPolytope2:
    """Compact convex polygon with nonempty interior, vertices ccw."""

    vertices: np.ndarray  # (n, 2)
    normals: np.ndarray   # (n, 2) unit outer normals; facet i = [v_i, v_{i+1}]
    offsets: np.ndarray   # (n,)   so that <normals[i], x> <= offsets[i] on the body

    @staticmethod
    def from_vertices(vertices, tol: float = EPS_GEO) -> "ConvexPolytope2":
        v = np.asarray(vertices, float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidPolytope("vertex array must have shape (n, 2)")
        if v.shape[0] < 3:
            raise InvalidPolytope("need at least three vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidPolytope("vertices must be finite")
        edges = np.roll(v, -1, axis=0) - v
        lens = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(lens <= tol):
            raise InvalidPolytope("consecutive vertices coincide")
        nxt = np.roll(edges, -1, axis=0)
        turns = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
        if np.any(turns <= tol):
            raise InvalidPolytope(
                "vertices must be in strictly convex counterclockwise position")
        normals = np.column_stack([edges[:, 1], -edges[:, 0]]) / lens[:, None]
        offsets = np.einsum("ij,ij->i", normals, v)
        slack = v @ normals.T - offsets  # every vertex inside every halfplane
        if slack.max() > tol:
            raise InvalidPolytope("vertex cycle is not convex")
        for arr in (v, normals, offsets):
            arr.setflags(write=False)
        return ConvexPolytope2(v, normals, offsets)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def edge_vector(self, i: int) -> np.ndarray:
        return self.vertices[(i + 1) % self.n] - self.vertices[i]

    def facet_segment(self, i: int) -> Tuple[np.ndarray, np.ndarray]:
        return self.vertices[i], self.vertices[(i + 1) % self.n]

    def contains(self, x, tol: float = EPS_GEO) -> bool:
        s = self.normals @ np.asarray(x, float) - self.offsets
        return bool(s.max() <= tol)

    def origin_interior_margin(self) -> float:
        return float(self.offsets.min())

    def diameter(self) -> float:
        d = self.vertices[:, None, :] - self.vertices[None, :, :]
        return float(np.sqrt((d ** 2).sum(axis=2)).max())

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def translate(self, t) -> "ConvexPolytope2":
        return ConvexPolytope2.from_vertices(self.vertices + np.asarray(t, float))

    def scale(self, c: float) -> "ConvexPolytope2":
        if c <= 0:
            raise InvalidPolytope("scale factor must be positive")
        return ConvexPolytope2.from_vertices(c * self.vertices)

    def reflect(self) -> "ConvexPolytope2":
        """The point reflection -P (orientation is preserved)."""
        return ConvexPolytope2.from_vertices(-self.vertices)

    def to_json_obj(self) -> dict:
        return {"vertices": [[float(x), float(y)] for x, y in self.vertices]}

    @staticmethod
    def from_json_obj(obj, tol: float = EPS_GEO) -> "ConvexPolytope2":
        if not isinstance(obj, dict) or "vertices" not in obj:
            raise InvalidPolytope('expected an object with a "vertices" key')
        return ConvexPolytope2.from_vertices(obj["vertices"], tol=tol)


@dataclass(frozen=True)
class Face:
    """A proper face of a polytope: a vertex or an (edge) facet."""

    kind: str  # "vertex" | "edge"
    index: int

    @staticmethod
    def vertex(i: int) -> "Face":
        return Face("vertex", i)

    @staticmethod
    def edge(i: int) -> "Face":
        return Face("edge", i)

    @property
    def is_edge(self) -> bool:
        return self.kind == "edge"

    def sort_key(self) -> Tuple[int, int]:
        return (0 if self.kind == "vertex" else 1, self.index)


def all_faces(P: ConvexPolytope2) -> List[Face]:
    return [Face.vertex(i) for i in range(P.n)] + [Face.edge(i) for i in range(P.n)]


def face_distance(P: ConvexPolytope2, f: Face, x) -> float:
    if f.kind == "vertex":
        return float(np.hypot(*(np.asarray(x, float) - P.vertices[f.index])))
    a, b = P.facet_segment(f.index)
    return segment_distance(a, b, x)


def find_face(P: ConvexPolytope2, x, tol: float = EPS_GEO) -> Face:
    """Smallest face of P containing x (vertices win over edges)."""
    x = np.asarray(x, float)
    d = np.hypot(*(P.vertices - x).T)
    i = int(np.argmin(d))
    if d[i] <= tol:
        return Face.vertex(i)
    for j in range(P.n):
        a, b = P.facet_segment(j)
        if segment_distance(a, b, x) <= tol:
            return Face.edge(j)
    raise GeometryError("point is not on the boundary of the polytope")


@dataclass(frozen=True)
class NormalConeRep:
    """Finitely generated cone, spanned by one or two unit generators in ccw
    order; the angular width is < pi for any valid polytope face."""

    generators: Tuple[np.ndarray, ...]

    @property
    def is_ray(self) -> bool:
        return len(self.generators) == 1

    def angles(self) -> Tuple[float, float]:
        """(start angle, width)."""
        g = self.generators
        a0 = math.atan2(g[0][1], g[0][0])
        if len(g) == 1:
            return a0, 0.0
        a1 = math.atan2(g[1][1], g[1][0])
        width = (a1 - a0) % (2 * math.pi)
        return a0, width

    def negate(self) -> "NormalConeRep":
        g = self.generators
        if len(g) == 1:
            return NormalConeRep((-g[0],))
        return NormalConeRep((-g[0], -g[1]))


def normal_cone(P: ConvexPolytope2, f: Face) -> NormalConeRep:
    if f.kind == "edge":
        return NormalConeRep((P.normals[f.index],))
    i = f.index
    return NormalConeRep((P.normals[(i - 1) % P.n], P.normals[i]))


def cone_contains(cone: NormalConeRep, v, tol: float = EPS_GEO) -> bool:
    v = np.asarray(v, float)
    nv = float(np.hypot(v[0], v[1]))
    if nv <= tol:
        return True  # the zero vector belongs to every closed cone
    s = tol * nv
    g = cone.generators
    if len(g) == 1:
        return abs(cross2(g[0], v)) <= s and float(g[0] @ v) >= -s
    return cross2(g[0], v) >= -s and cross2(v, g[1]) >= -s


def cone_distance(cone: NormalConeRep, v) -> float:
    """Euclidean distance from v to the cone."""
    v = np.asarray(v, float)
    if cone_contains(cone, v, 0.0):
        return 0.0
    best = float(np.hypot(v[0], v[1]))  # distance to the apex
    for g in cone.generators:
        t = max(0.0, float(g @ v))
        best = min(best, float(np.hypot(*(v - t * g))))
    return best


def cones_intersect(c1: NormalConeRep, c2: NormalConeRep,
                    tol: float = EPS_ANG) -> bool:
    """True iff the cones share a nonzero direction (closed reading)."""
    a1, w1 = c1.angles()
    a2, w2 = c2.angles()
    d12 = (a2 - a1) % (2 * math.pi)
    d21 = (a1 - a2) % (2 * math.pi)
    return d12 <= w1 + tol or d21 <= w2 + tol


def support(P: ConvexPolytope2, x) -> float:
    """h_P(x) = max over P of <., x>."""
    return float(np.max(P.vertices @ np.asarray(x, float)))


def support_many(P: ConvexPolytope2, X: np.ndarray) -> np.ndarray:
    return (np.asarray(X, float) @ P.vertices.T).max(axis=1)


def polar(T: ConvexPolytope2, tol: float = EPS_GEO) -> ConvexPolytope2:
    """T degrees = {x : <x, v> <= 1 for all v in T}; needs 0 in the interior."""
    if T.origin_interior_margin() <= tol:
        raise OriginNotInterior("polar body requires the origin strictly inside")
    v = T.vertices
    w = np.empty_like(v)
    for i in range(T.n):
        a, b = v[i], v[(i + 1) % T.n]
        w[i] = np.linalg.solve(np.array([a, b]), np.ones(2))
    area2 = np.sum(w[:, 0] * np.roll(w[:, 1], -1) - np.roll(w[:, 0], -1) * w[:, 1])
    if area2 < 0:
        w = w[::-1]
    return ConvexPolytope2.from_vertices(w, tol=tol)


def gauge(P: ConvexPolytope2, x, tol: float = EPS_GEO) -> float:
    """Minkowski functional of P at x (0 must be interior)."""
    if P.origin_interior_margin() <= tol:
        raise OriginNotInterior("gauge requires the origin strictly inside")
    x = np.asarray(x, float)
    s = P.normals @ x / P.offsets
    return float(max(s.max(), 0.0))


@dataclass(frozen=True)
class ClosedCurve:
    """Closed polygonal curve q_1 .. q_m (indices cyclic).

    Validity: m >= 2, consecutive vertices distinct, and no vertex lies on
    the segment between its two neighbours (for m = 2 this reduces to the
    two points being distinct)."""

    vertices: np.ndarray  # (m, 2)

    @staticmethod
    def from_vertices(vertices, tol: float = EPS_GEO) -> "ClosedCurve":
        v = np.asarray(vertices, float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidCurve("vertex array must have shape (m, 2)")
        m = v.shape[0]
        if m < 2:
            raise InvalidCurve("a closed billiard curve needs at least two vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidCurve("vertices must be finite")
        for j in range(m):
            a, b = v[(j - 1) % m], v[(j + 1) % m]
            if segment_distance(a, b, v[j]) <= tol:
                raise InvalidCurve(
                    "vertex lies on the segment between its neighbours")
        v = v.copy()
        v.setflags(write=False)
        return ClosedCurve(v)

    @property
    def m(self) -> int:
        return self.vertices.shape[0]

    def edges(self) -> np.ndarray:
        """Differences q_{j+1} - q_j, shape (m, 2)."""
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def translate(self, t) -> "ClosedCurve":
        return ClosedCurve.from_vertices(self.vertices + np.asarray(t, float))


def ell_length(T: ConvexPolytope2, q: ClosedCurve) -> float:
    """Length of the closed curve q in the Minkowski metric induced by T,
    i.e. the sum of h_T over the edge vectors."""
    return float(support_many(T, q.edges()).sum())


def positively_spans(vectors: Sequence, tol: float = EPS_ANG) -> bool:
    """True iff the vectors positively span the plane, i.e. 0 is in the
    interior of their convex cone.  Collections whose largest angular gap
    equals pi (all vectors in a closed halfplane) do not count."""
    vs = [np.asarray(v, float) for v in vectors]
    if len(vs) < 3:
        return False
    angles = []
    for v in vs:
        if float(np.hypot(v[0], v[1])) <= EPS_GEO:
            raise ZeroVector("zero vector in a spanning test")
        angles.append(math.atan2(v[1], v[0]))
    angles.sort()
    gaps = [angles[k + 1] - angles[k] for k in range(len(angles) - 1)]
    gaps.append(2 * math.pi - (angles[-1] - angles[0]))
    return max(gaps) < math.pi - tol


def in_f(K: ConvexPolytope2, points, tol: float = EPS_GEO) -> bool:
    """Whether the point set touches the boundary 'immovably': no translation
    pushes all points into the interior of K.  Decided by maximizing the
    common interior margin over translations."""
    pts = np.asarray(points, float)
    if pts.ndim == 1:
        pts = pts[None, :]
    worst = (pts @ K.normals.T).max(axis=0)  # per facet, the tightest point
    cons = [Constraint((float(a[0]), float(a[1]), 1.0), float(b - w))
            for a, b, w in zip(K.normals, K.offsets, worst)]
    sol = solve(LinearProgram(objective=(0.0, 0.0, 1.0), constraints=cons))
    if sol.status != "optimal":
        raise GeometryError(f"margin LP ended with status {sol.status}")
    return bool(sol.x[2] <= tol)


def convex_hull(points) -> np.ndarray:
    """Strict convex hull (no collinear vertices), ccw, via monotone chain."""
    pts = sorted({(float(x), float(y)) for x, y in np.asarray(points, float)})
    if len(pts) < 3:
        raise GeometryError("need at least three distinct points")

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                if (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0]) <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(pts[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise GeometryError("points are collinear")
    return np.asarray(hull, float)
