import random

import pytest

from labeldist import planar
from labeldist.generate import grid_graph, random_triangulation


def cycle_graph(k, weights=None):
    """C_k with standard embedding; rotation at each vertex: [prev-edge, next-edge]."""
    edges = [(i, (i + 1) % k) for i in range(k)]
    w = weights or ["1"] * k
    rotations = [[(v - 1) % k, v] for v in range(k)]
    return planar.build_from_rotation(k, edges, w, rotations)


def k4_graph(weights=None):
    # planar K4: outer triangle 0-1-2, center 3; rotations clockwise by coords
    edges = [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]
    coords = [(0.0, 0.0), (2.0, 0.0), (1.0, 2.0), (1.0, 0.7)]
    import math
    rotations = []
    for v in range(4):
        inc = [e for e, (a, b) in enumerate(edges) if v in (a, b)]
        def key(e, v=v):
            a, b = edges[e]
            w_ = b if a == v else a
            return -math.atan2(coords[w_][1] - coords[v][1],
                               coords[w_][0] - coords[v][0])
        rotations.append(sorted(inc, key=key))
    w = weights or ["1"] * 6
    return planar.build_from_rotation(4, edges, w, rotations)


def bellman_ford(g, src):
    """Independent distance oracle: no heap, no early exit."""
    INF = None
    dist = [INF] * g.n
    dist[src] = 0
    for _ in range(g.n):
        changed = False
        for e in range(g.m):
            u, v = g.edge_ends(e)
            w = g.edge_w[e]
            for a, b in ((u, v), (v, u)):
                da = dist[a]
                if da is not None and (dist[b] is None or da + w < dist[b]):
                    dist[b] = da + w
                    changed = True
        if not changed:
            break
    return dist


def prepared(g, seed=1):
    """triangulate + perturb; the standard preprocessing pipeline."""
    return planar.perturb_for_unique_sp(planar.triangulate(g), seed)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def small_instances():
    return [
        prepared(grid_graph(3, seed=5)),
        prepared(random_triangulation(24, seed=7)),
        prepared(grid_graph(4, seed=9)),
    ]
