"""Instance generators: triangulated grids, random triangulations grown by
face splits, fan-triangulated disks, and label assignments.

All generators are deterministic under a fixed seed.
"""

from __future__ import annotations

import math
import random

from .planar import EmbeddedGraph, build_from_rotation

PRECISION = 2


class BadSize(ValueError):
    pass


def _random_weight(rng: random.Random) -> str:
    v = rng.randint(100, 10000)  # [1.00, 100.00]
    return f"{v // 100}.{v % 100:02d}"


def _rotations_from_coords(n, edges, coords):
    incident: list[list[int]] = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        incident[u].append(e)
        incident[v].append(e)
    rotations = []
    for v in range(n):
        def key(e, v=v):
            u1, v1 = edges[e]
            w = v1 if u1 == v else u1
            dx = coords[w][0] - coords[v][0]
            dy = coords[w][1] - coords[v][1]
            return -math.atan2(dy, dx)  # clockwise in y-up coordinates
        rotations.append(sorted(incident[v], key=key))
    return rotations


def grid_graph(k: int, seed: int = 0, unit_weights: bool = False) -> EmbeddedGraph:
    """k x k lattice with one diagonal per cell; every inner face a triangle,
    outer face a 4(k-1)-gon."""
    if k < 2:
        raise BadSize("grid needs k >= 2")
    rng = random.Random(seed)
    n = k * k
    coords = [(i % k, i // k) for i in range(n)]
    edges = []
    for j in range(k):
        for i in range(k):
            v = j * k + i
            if i + 1 < k:
                edges.append((v, v + 1))
            if j + 1 < k:
                edges.append((v, v + k))
            if i + 1 < k and j + 1 < k:
                edges.append((v, v + k + 1))
    weights = ["1" if unit_weights else _random_weight(rng) for _ in edges]
    rotations = _rotations_from_coords(n, edges, coords)
    return build_from_rotation(n, edges, weights, rotations,
                               precision=0 if unit_weights else PRECISION)


class _MutableTriangulation:
    """Grows a triangulation by splitting inner faces with a new vertex."""

    def __init__(self, rng):
        self.rng = rng
        # initial triangle 0-1-2; darts 2e/2e+1 per edge as in EmbeddedGraph
        self.edges = [(0, 1), (1, 2), (2, 0)]
        self.weights = [self._w(), self._w(), self._w()]
        # rotations as dart lists; dart 2e: tail edges[e][0], 2e+1: tail edges[e][1]
        self.rot = [[0, 5], [2, 1], [4, 3]]
        # inner face of the triangle: walk 0->1 (dart 0), 1->2 (dart 2), 2->0 (dart 4)
        self.inner_faces = [(0, 2, 4)]

    def _w(self):
        return _random_weight(self.rng)

    def head(self, h):
        u, v = self.edges[h >> 1]
        return v if h % 2 == 0 else u

    def tail(self, h):
        return self.head(h ^ 1)

    def split_random_face(self):
        f_idx = self.rng.randrange(len(self.inner_faces))
        walk = self.inner_faces[f_idx]
        x = len(self.rot)
        self.rot.append([])
        star = []
        for h in walk:
            cv = self.head(h)
            e = len(self.edges)
            self.edges.append((cv, x))
            self.weights.append(self._w())
            d_out = 2 * e          # cv -> x
            rot_cv = self.rot[cv]
            rot_cv.insert(rot_cv.index(h ^ 1) + 1, d_out)
            star.append(d_out ^ 1)
        self.rot[x] = [star[0]] + star[:0:-1]
        # each walk dart h now bounds triangle (h, head(h)->x, x->tail(h))
        new_faces = [(h, star[i] ^ 1, star[(i - 1) % len(walk)])
                     for i, h in enumerate(walk)]
        self.inner_faces[f_idx] = new_faces[0]
        self.inner_faces.extend(new_faces[1:])

    def build(self) -> EmbeddedGraph:
        n = len(self.rot)
        rotations = [[h >> 1 for h in r] for r in self.rot]
        return build_from_rotation(n, self.edges, self.weights, rotations,
                                   precision=PRECISION)


def random_triangulation(n: int, seed: int = 0) -> EmbeddedGraph:
    """Planar triangulation with n vertices grown by random face splits;
    the outer face stays a triangle, so the result is fully triangulated."""
    if n < 3:
        raise BadSize("random triangulation needs n >= 3")
    t = _MutableTriangulation(random.Random(seed))
    for _ in range(n - 3):
        t.split_random_face()
    return t.build()


def disk_triangulation(boundary: int, splits: int, seed: int = 0) -> EmbeddedGraph:
    """Fan-triangulated disk: a boundary cycle of ``boundary`` vertices, a hub,
    and ``splits`` extra face splits.  The outer face keeps all boundary
    vertices, which makes it a natural site-carrying hole."""
    if boundary < 3:
        raise BadSize("disk needs boundary >= 3")
    rng = random.Random(seed)
    b = boundary
    coords = [(math.cos(2 * math.pi * i / b), math.sin(2 * math.pi * i / b))
              for i in range(b)] + [(0.0, 0.0)]
    edges = [(i, (i + 1) % b) for i in range(b)] + [(i, b) for i in range(b)]
    weights = [_random_weight(rng) for _ in edges]
    rotations = _rotations_from_coords(b + 1, edges, coords)
    g = build_from_rotation(b + 1, edges, weights, rotations, precision=PRECISION)
    if splits <= 0:
        return g
    # reuse the mutable grower seeded with this disk
    t = _MutableTriangulation(rng)
    t.edges = [(u, v) for u, v in edges]
    t.weights = list(weights)
    t.rot = [[(2 * e if edges[e][0] == v else 2 * e + 1) for e in rot]
             for v, rot in enumerate(rotations)]
    t.inner_faces = []
    for f in range(g.f):
        walk = tuple(g.face_walk(f))
        # the outer face uses boundary edges only (ids < b); keep it intact
        if all((h >> 1) < b for h in walk):
            continue
        t.inner_faces.append(walk)
    for _ in range(splits):
        t.split_random_face()
    return t.build()


def assign_labels(g: EmbeddedGraph, mode: str, k: int | None, seed: int = 0) -> list[str]:
    """Label strings for the non-artificial vertices of g.

    Modes: ``unique`` (every vertex its own label), ``uniform-k`` (seeded
    uniform choice among k labels), ``clustered-k`` (nearest of k seeded
    centre vertices, unweighted BFS metric).
    """
    real = [v for v in range(g.n) if not g.vert_art[v]]
    labels = [""] * g.n
    if mode == "unique":
        for v in real:
            labels[v] = f"v{v}"
        return labels
    if k is None or k < 1:
        raise BadSize("label mode needs k >= 1")
    rng = random.Random(seed)
    if mode == "uniform":
        for v in real:
            labels[v] = f"L{rng.randrange(k)}"
        return labels
    if mode == "clustered":
        centers = rng.sample(real, min(k, len(real)))
        from collections import deque
        owner = [-1] * g.n
        dq = deque()
        for i, c in enumerate(centers):
            owner[c] = i
            dq.append(c)
        while dq:
            v = dq.popleft()
            for h in g.rotations[v]:
                w = g.head[h]
                if owner[w] == -1 and not g.vert_art[w]:
                    owner[w] = owner[v]
                    dq.append(w)
        for v in real:
            labels[v] = f"L{owner[v] if owner[v] >= 0 else 0}"
        return labels
    raise BadSize(f"unknown label mode {mode!r}")
