"""Regular 3-bounce trajectories of triangles, and the family of geometries
that rules them out.

A triangle Delta has a regular 3-bounce trajectory in the geometry of T
exactly when the search pipeline succeeds on its single facet triple.  The
companion test asks whether T belongs to the family characterized by a
rotated copy of Delta: some rotation of Delta by +-90 degrees admits a
maximal placement inside T whose contact points are immovable on the
boundary and whose contact normals positively span the plane."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .bounce3 import NoInbody, dual_normal_choices, find_inbody, search_three_bounce
from .geom import ConvexPolytope2, Face, in_f, normal_cone, positively_spans, rotation


@dataclass(frozen=True)
class FamilyWitness:
    rotation: float          # +pi/2 or -pi/2
    scale: float
    shift: np.ndarray
    vertices: np.ndarray     # contact points on the boundary of T
    t_faces: Tuple[Face, ...]


def family_t_construction(triangle: ConvexPolytope2,
                          angle: float = math.pi / 2) -> ConvexPolytope2:
    """A geometry built to contain the quarter-turned triangle maximally:
    the intersection of the supporting halfplanes at its vertices whose
    normals bisect the vertex normal cones.  By construction the growth LP
    caps at scale 1 with all three vertices on the boundary, so the result
    always belongs to the family of the triangle."""
    rot = ConvexPolytope2.from_vertices(triangle.vertices @ rotation(angle).T)
    centred = ConvexPolytope2.from_vertices(rot.vertices - rot.centroid())
    ns, bs = [], []
    for i in range(3):
        g = normal_cone(centred, Face.vertex(i)).generators
        n = g[0] + g[1]
        n = n / np.hypot(*n)
        ns.append(n)
        bs.append(float(n @ centred.vertices[i]))
    ns, bs = np.array(ns), np.array(bs)
    order = np.argsort(np.arctan2(ns[:, 1], ns[:, 0]))
    ns, bs = ns[order], bs[order]
    verts = [np.linalg.solve(np.array([ns[i], ns[(i + 1) % 3]]),
                             np.array([bs[i], bs[(i + 1) % 3]]))
             for i in range(3)]
    return ConvexPolytope2.from_vertices(np.array(verts))


def largest_angle(triangle: ConvexPolytope2) -> float:
    v = triangle.vertices
    if v.shape[0] != 3:
        raise ValueError("expected a triangle")
    best = 0.0
    for i in range(3):
        a = v[(i - 1) % 3] - v[i]
        b = v[(i + 1) % 3] - v[i]
        c = float(a @ b) / (np.hypot(*a) * np.hypot(*b))
        best = max(best, math.acos(max(-1.0, min(1.0, c))))
    return best


def regular_three_bounce_exists(triangle: ConvexPolytope2,
                                T: ConvexPolytope2,
                                samples: int = 8) -> bool:
    if triangle.n != 3:
        raise ValueError("expected a triangle")
    return len(search_three_bounce(triangle, T, samples=samples)) > 0


def in_family_t(triangle: ConvexPolytope2, T: ConvexPolytope2,
                samples: int = 8) -> Tuple[bool, Optional[FamilyWitness]]:
    """Whether T carries a geometry from the family associated with the
    triangle: a quarter-turn of the triangle admits a maximal inscribed
    placement whose contact points cannot be translated off the boundary and
    whose contact normals positively span."""
    if triangle.n != 3:
        raise ValueError("expected a triangle")
    for ang in (math.pi / 2, -math.pi / 2):
        rot = triangle.vertices @ rotation(ang).T
        try:
            inbody = find_inbody(rot, T)
        except NoInbody:
            continue
        if not in_f(T, inbody.vertices):
            continue
        spanning = any(
            positively_spans(list(tup))
            for tup in dual_normal_choices(inbody, T, samples=samples))
        if not spanning:
            continue
        return True, FamilyWitness(ang, inbody.scale, inbody.shift,
                                   inbody.vertices, inbody.t_faces)
    return False, None
