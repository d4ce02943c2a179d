import numpy as np
import pytest
from hypothesis import strategies as st

from minkbill.randgen import random_polytope


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def polytopes(draw, min_vertices=3, max_vertices=8, recentre=False):
    """Random strictly convex polygons, seeded through hypothesis so failures
    shrink to a reproducible seed."""
    n = draw(st.integers(min_vertices, max_vertices))
    seed = draw(st.integers(0, 2**32 - 1))
    P = random_polytope(np.random.default_rng(seed), n)
    if recentre:
        P = P.translate(-P.centroid())
    return P


@st.composite
def vectors(draw, scale=10.0, nonzero=False):
    x = draw(st.floats(-scale, scale, allow_nan=False))
    y = draw(st.floats(-scale, scale, allow_nan=False))
    if nonzero and abs(x) + abs(y) < 1e-6:
        x = 1.0
    return np.array([x, y])
