"""Planar embedded multigraph kernel.

The embedding is a rotation system over darts (half-edges).  Edge ``e`` owns
darts ``2e`` and ``2e+1``; ``twin(h) == h ^ 1``.  ``rotations[v]`` lists the
outgoing darts at ``v`` in clockwise order (clockwise meaning: the order the
input declares; only consistency matters).  Faces are derived orbits of
``h -> rot_next[twin(h)]`` and are never stored authoritatively.

Weights are fixed-point integers (see :mod:`labeldist.weights`).  Artificial
edges introduced by triangulation carry an explicit flag; for traversal they
are assigned a per-graph ``huge`` value exceeding the sum of all finite
weights, which makes plain integer comparison realise the lexicographic order
(number of artificial edges, finite weight).  A distance is infinite exactly
when it is ``>= huge``.
"""

from __future__ import annotations

import math
import random
from heapq import heappush, heappop
from typing import Callable, Iterable, Sequence

from .weights import Weight, parse_decimal

LEFT = "LeftTurn"
RIGHT = "RightTurn"
PREFIX = "Prefix"

# extra random bits per edge on top of the comparison-preserving floor; the
# downstream structures (Voronoi cells, MSSP sweeps) assume no accidental ties
# across derived additive weights, so the noise must be wide.
PERTURB_EXTRA_BITS = 64
_FULL_UNIQUENESS_CHECK_LIMIT = 420
_PERTURB_RETRIES = 4


class GraphError(Exception):
    pass


class InconsistentAdjacency(GraphError):
    pass


class EulerViolation(GraphError):
    pass


class NegativeWeight(GraphError):
    pass


class Overflow(GraphError):
    """Fixed-width overflow; unreachable with arbitrary-precision integers."""


class UniquenessNotAchieved(GraphError):
    pass


class NotEmanating(GraphError):
    pass


class FaceNotFound(GraphError):
    pass


class EmbeddedGraph:
    """Immutable planar embedded weighted multigraph."""

    __slots__ = (
        "n", "m", "head", "rot_next", "rotations", "dart_pos",
        "edge_w", "edge_art", "vert_art",
        "dart_face", "face_dart", "f",
        "precision", "scale_bits", "huge", "perturbed",
    )

    def __init__(self, n, head, rotations, edge_w, edge_art, vert_art,
                 precision=0, scale_bits=0, huge=None, perturbed=False):
        self.n = n
        self.m = len(edge_w)
        self.head = head
        self.rotations = rotations
        self.edge_w = edge_w
        self.edge_art = edge_art
        self.vert_art = vert_art
        self.precision = precision
        self.scale_bits = scale_bits
        self.perturbed = perturbed
        if sum(len(r) for r in rotations) != 2 * self.m:
            raise InconsistentAdjacency("rotations do not cover every dart once")
        rot_next = [0] * (2 * self.m)
        dart_pos = [0] * (2 * self.m)
        for v, rot in enumerate(rotations):
            k = len(rot)
            for i, h in enumerate(rot):
                rot_next[h] = rot[(i + 1) % k]
                dart_pos[h] = i
        self.rot_next = rot_next
        self.dart_pos = dart_pos
        if huge is None:
            huge = sum(w for w, a in zip(edge_w, edge_art) if not a) + 1
        self.huge = huge
        self._derive_faces()

    # -- basic accessors -------------------------------------------------

    def tail(self, h: int) -> int:
        return self.head[h ^ 1]

    def dart_weight(self, h: int) -> int:
        return self.edge_w[h >> 1]

    def weight_of(self, raw: int) -> Weight:
        return Weight(raw, raw >= self.huge)

    def is_infinite(self, raw: int) -> bool:
        return raw >= self.huge

    def face_next(self, h: int) -> int:
        return self.rot_next[h ^ 1]

    def face_walk(self, f: int) -> list[int]:
        start = self.face_dart[f]
        walk = [start]
        h = self.face_next(start)
        while h != start:
            walk.append(h)
            h = self.face_next(h)
        return walk

    def face_vertices(self, f: int) -> list[int]:
        return [self.head[h] for h in self.face_walk(f)]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def edge_ends(self, e: int) -> tuple[int, int]:
        return self.head[2 * e + 1], self.head[2 * e]

    def word_count(self) -> int:
        return 12 * self.m + 2 * self.n + self.f

    # -- derivation ------------------------------------------------------

    def _derive_faces(self):
        nd = 2 * self.m
        dart_face = [-1] * nd
        face_dart = []
        for h0 in range(nd):
            if dart_face[h0] != -1:
                continue
            fid = len(face_dart)
            face_dart.append(h0)
            h = h0
            while dart_face[h] == -1:
                dart_face[h] = fid
                h = self.rot_next[h ^ 1]
            if h != h0:
                raise EulerViolation("rotation system does not close faces")
        self.dart_face = dart_face
        self.face_dart = face_dart
        self.f = len(face_dart)
        if self.n - self.m + self.f != 2:
            raise EulerViolation(
                f"Euler formula violated: n={self.n} m={self.m} f={self.f}")
        # connectivity (Euler with f as computed already forces it for a
        # single rotation-closed component, but check explicitly).
        if self.n:
            seen = [False] * self.n
            stack = [0]
            seen[0] = True
            cnt = 1
            while stack:
                v = stack.pop()
                for h in self.rotations[v]:
                    w = self.head[h]
                    if not seen[w]:
                        seen[w] = True
                        cnt += 1
                        stack.append(w)
            if cnt != self.n:
                raise EulerViolation("graph is not connected")


def build_from_rotation(n: int,
                        edges: Sequence[tuple[int, int]],
                        weights: Sequence,
                        rotations: Sequence[Sequence[int]],
                        precision: int = 0) -> EmbeddedGraph:
    """Build an embedded graph from edge list and per-vertex clockwise
    rotations given as edge indices.

    Raises InconsistentAdjacency if an edge is missing from (or duplicated
    in) an endpoint's rotation, NegativeWeight on negative weights.
    """
    m = len(edges)
    if len(weights) != m or len(rotations) != n:
        raise InconsistentAdjacency("edge/weight/rotation counts disagree")
    edge_w = []
    for w in weights:
        if isinstance(w, str):
            try:
                scaled = parse_decimal(w, precision)
            except ValueError as exc:
                raise NegativeWeight(str(exc)) if "-" in w else GraphError(str(exc))
        else:
            scaled = int(w)
            if scaled < 0:
                raise NegativeWeight(f"negative weight {w}")
        edge_w.append(scaled)
    head = [0] * (2 * m)
    for e, (u, v) in enumerate(edges):
        if u == v:
            raise InconsistentAdjacency(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InconsistentAdjacency(f"edge {e} endpoint out of range")
        head[2 * e] = v
        head[2 * e + 1] = u
    # translate per-vertex edge rotations into dart rotations
    seen_at = [0] * m
    rot_darts: list[list[int]] = []
    for v, rot in enumerate(rotations):
        darts = []
        for e in rot:
            if not (0 <= e < m):
                raise InconsistentAdjacency(f"rotation of {v} names bad edge {e}")
            u1, v1 = edges[e]
            if v == u1:
                darts.append(2 * e)
            elif v == v1:
                darts.append(2 * e + 1)
            else:
                raise InconsistentAdjacency(
                    f"edge {e} in rotation of {v} but {v} is not an endpoint")
            seen_at[e] += 1
        rot_darts.append(darts)
    for e, cnt in enumerate(seen_at):
        if cnt != 2:
            raise InconsistentAdjacency(
                f"edge {e} appears {cnt} times across rotations (expected 2)")
    edge_art = [False] * m
    vert_art = [False] * n
    return EmbeddedGraph(n, head, rot_darts, edge_w, edge_art, vert_art,
                         precision=precision)


# -- text format ---------------------------------------------------------

def parse_graph_text(text: str) -> EmbeddedGraph:
    """Parse the line-oriented graph format.

    header ``planar <n> <m> <precision>``, then ``edge <u> <v> <w>`` lines,
    then ``rot <v> <e...>`` lines.  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or not lines[0].startswith("planar"):
        raise GraphError("missing 'planar' header")
    parts = lines[0].split()
    if len(parts) != 4:
        raise GraphError("header must be 'planar <n> <m> <precision>'")
    n, m, precision = int(parts[1]), int(parts[2]), int(parts[3])
    edges, weights = [], []
    rotations: list[list[int] | None] = [None] * n
    for line in lines[1:]:
        parts = line.split()
        if parts[0] == "edge":
            if len(parts) != 4:
                raise GraphError(f"bad edge line: {line!r}")
            edges.append((int(parts[1]), int(parts[2])))
            weights.append(parts[3])
        elif parts[0] == "rot":
            v = int(parts[1])
            if not (0 <= v < n):
                raise GraphError(f"rotation for unknown vertex {v}")
            rotations[v] = [int(x) for x in parts[2:]]
        else:
            raise GraphError(f"unknown directive {parts[0]!r}")
    if len(edges) != m:
        raise GraphError(f"expected {m} edges, found {len(edges)}")
    for v, rot in enumerate(rotations):
        if rot is None:
            raise GraphError(f"missing rotation for vertex {v}")
    return build_from_rotation(n, edges, weights, rotations, precision)


def write_graph_text(g: EmbeddedGraph) -> str:
    out = [f"planar {g.n} {g.m} {g.precision}"]
    for e in range(g.m):
        u, v = g.edge_ends(e)
        w = Weight(g.edge_w[e], g.edge_art[e]).to_decimal(g.precision, g.scale_bits) \
            if not g.edge_art[e] else "inf"
        if g.edge_art[e]:
            raise GraphError("text format carries finite input graphs only")
        out.append(f"edge {u} {v} {w}")
    for v in range(g.n):
        ids = " ".join(str(h >> 1) for h in g.rotations[v])
        out.append(f"rot {v} {ids}")
    return "\n".join(out) + "\n"


# -- transforms ----------------------------------------------------------

def triangulate(g: EmbeddedGraph) -> EmbeddedGraph:
    """Star-triangulate every non-triangular face with an artificial vertex
    and artificial (infinite) edges, one edge per corner of the face walk."""
    head = list(g.head)
    rotations = [list(r) for r in g.rotations]
    edge_w = list(g.edge_w)
    edge_art = list(g.edge_art)
    vert_art = list(g.vert_art)
    insert_after: dict[int, list[int]] = {}

    def face_is_triangle(walk):
        return len(walk) == 3 and len({g.head[h] for h in walk}) == 3

    for f in range(g.f):
        walk = g.face_walk(f)
        if face_is_triangle(walk):
            continue
        x = len(rotations)
        rotations.append([])
        vert_art.append(True)
        star = []
        for h in walk:
            cv = g.head[h]
            e = len(edge_w)
            edge_w.append(g.huge)
            edge_art.append(True)
            head.extend([x, cv])        # dart 2e: cv->x, dart 2e+1: x->cv
            insert_after.setdefault(h ^ 1, []).append(2 * e)
            star.append(2 * e + 1)
        rotations[x] = [star[0]] + star[:0:-1]
    # splice new darts into rotations: new dart goes right после the twin of
    # the walk dart it was created for.
    for v in range(g.n):
        rot = rotations[v]
        out = []
        for h in rot:
            out.append(h)
            out.extend(insert_after.get(h, ()))
        rotations[v] = out
    return EmbeddedGraph(len(rotations), head, rotations, edge_w, edge_art,
                         vert_art, g.precision, g.scale_bits, None, g.perturbed)


def perturb_for_unique_sp(g: EmbeddedGraph, seed: int) -> EmbeddedGraph:
    """Rescale weights by 2**B and add seeded noise r_e < 2**B / m**2.

    B is wide enough that strict comparisons between original path weights
    are preserved, while the noise makes distinct simple paths carry distinct
    weights with overwhelming probability; the result is verified with
    check_unique_sp (exhaustively at small n, sampled above) and retried on
    failure.
    """
    m = g.m
    bits = math.ceil(2 * math.log2(max(m, 2))) + PERTURB_EXTRA_BITS
    span = (1 << bits) // (m * m)
    if span < 2:
        raise GraphError("perturbation span too small")
    for attempt in range(_PERTURB_RETRIES):
        rng = random.Random(seed * 0x9E3779B1 + attempt)
        edge_w = []
        for e in range(m):
            if g.edge_art[e]:
                edge_w.append(0)  # reassigned below once huge is known
            else:
                edge_w.append((g.edge_w[e] << bits) + rng.randrange(span))
        huge = sum(w for w, a in zip(edge_w, g.edge_art) if not a) + (1 << bits) + 1
        for e in range(m):
            if g.edge_art[e]:
                edge_w[e] = huge + rng.randrange(span)
        out = EmbeddedGraph(g.n, list(g.head), [list(r) for r in g.rotations],
                            edge_w, list(g.edge_art), list(g.vert_art),
                            g.precision, g.scale_bits + bits, huge, True)
        if check_unique_sp(out, _sample_sources(out)):
            return out
    raise UniquenessNotAchieved(f"no unique-SP perturbation after {_PERTURB_RETRIES} tries")


def _sample_sources(g: EmbeddedGraph):
    if g.n <= _FULL_UNIQUENESS_CHECK_LIMIT:
        return range(g.n)
    rng = random.Random(0xC0FFEE ^ g.n)
    return sorted(rng.sample(range(g.n), 32))


def check_unique_sp(g: EmbeddedGraph, sources: Iterable[int] | None = None) -> bool:
    """True iff no Dijkstra run from the given sources (default: all) meets a
    tie d(u) + w(uv) == d(v) on a non-tree candidate edge."""
    if sources is None:
        sources = range(g.n)
    for s in sources:
        dist, parent, tie = _dijkstra_detect_tie(g, s)
        if tie:
            return False
    return True


# -- shortest paths ------------------------------------------------------

def dijkstra(g: EmbeddedGraph, root: int) -> tuple[list[int | None], list[int]]:
    """Canonical single-source shortest paths.

    Returns (dist, parent_dart); parent_dart[v] is the minimum-id dart among
    edges that attain dist[v] (canonical tree, independent of heap order);
    parent_dart[root] == -1.  dist values >= g.huge mean infinite.
    """
    n = g.n
    dist: list[int | None] = [None] * n
    parent = [-1] * n
    head = g.head
    ew = g.edge_w
    rot = g.rotations
    dist[root] = 0
    heap = [(0, root)]
    done = [False] * n
    while heap:
        d, v = heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for h in rot[v]:
            w = head[h]
            if done[w]:
                continue
            nd = d + ew[h >> 1]
            dw = dist[w]
            if dw is None or nd < dw:
                dist[w] = nd
                parent[w] = h
                heappush(heap, (nd, w))
            elif nd == dw and h < parent[w]:
                parent[w] = h
    return dist, parent


def _dijkstra_detect_tie(g: EmbeddedGraph, root: int):
    n = g.n
    dist: list[int | None] = [None] * n
    parent = [-1] * n
    head, ew, rot = g.head, g.edge_w, g.rotations
    dist[root] = 0
    heap = [(0, root)]
    done = [False] * n
    tie = False
    while heap:
        d, v = heappop(heap)
        if done[v]:
            continue
        done[v] = True
        # second-achiever scan: more than one settled in-edge attaining d
        cnt = 0
        for h in rot[v]:
            u = head[h]
            if dist[u] is not None and done[u] and dist[u] + ew[h >> 1] == d:
                cnt += 1
        if v != root and cnt > 1:
            tie = True
        for h in rot[v]:
            w = head[h]
            if done[w]:
                continue
            nd = d + ew[h >> 1]
            dw = dist[w]
            if dw is None or nd < dw:
                dist[w] = nd
                parent[w] = h
                heappush(heap, (nd, w))
    return dist, parent, tie


def shortest_path_tree(g: EmbeddedGraph, root: int):
    """Public alias returning (parent_dart, dist) per the library contract."""
    dist, parent = dijkstra(g, root)
    return parent, dist


def tree_path_darts(g: EmbeddedGraph, parent: list[int], v: int) -> list[int]:
    """Root-to-v dart sequence in a parent-dart tree."""
    darts = []
    while parent[v] != -1:
        h = parent[v]
        darts.append(h)
        v = g.head[h ^ 1]
    darts.reverse()
    return darts


def path_vertices(g: EmbeddedGraph, darts: Sequence[int]) -> list[int]:
    if not darts:
        return []
    verts = [g.tail(darts[0])]
    for h in darts:
        verts.append(g.head[h])
    return verts


def multi_source_dijkstra(g: EmbeddedGraph, sources: Sequence[tuple[int, int, int]],
                          detect_tie: bool = False):
    """Multi-source Dijkstra with additive offsets.

    ``sources`` holds (vertex, offset, site_id).  Relaxation order is
    lexicographic (distance, site_id, dart_id) so cell assignment is
    deterministic and cells are connected tree branches.  Returns
    (dist, site, parent_dart, tie_seen); parent_dart[v] == -1 for seeds.
    """
    n = g.n
    dist: list[int | None] = [None] * n
    site = [-1] * n
    parent = [-1] * n
    head, ew, rot = g.head, g.edge_w, g.rotations
    heap = []
    for v, off, sid in sources:
        dv = dist[v]
        if dv is None or off < dv or (off == dv and sid < site[v]):
            dist[v] = off
            site[v] = sid
            parent[v] = -1
            heappush(heap, (off, sid, -1, v))
    done = [False] * n
    tie_seen = False
    while heap:
        d, sid, ph, v = heappop(heap)
        if done[v]:
            continue
        if d != dist[v] or sid != site[v]:
            continue
        done[v] = True
        for h in rot[v]:
            w = head[h]
            if done[w]:
                if detect_tie and dist[w] is not None and d + ew[h >> 1] == dist[w] \
                        and site[w] != sid:
                    tie_seen = True
                continue
            nd = d + ew[h >> 1]
            dw = dist[w]
            if dw is None or nd < dw or (nd == dw and (sid, h) < (site[w], parent[w])):
                if detect_tie and dw is not None and nd == dw and site[w] != sid:
                    tie_seen = True
                dist[w] = nd
                site[w] = sid
                parent[w] = h
                heappush(heap, (nd, sid, h, w))
            elif detect_tie and dw is not None and nd == dw and site[w] != sid:
                tie_seen = True
    return dist, site, parent, tie_seen


# -- dual ----------------------------------------------------------------

def dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """The dual embedded graph: one vertex per face, one edge per edge
    (same edge ids), dual rotation = face-walk order."""
    head = [0] * (2 * g.m)
    for h in range(2 * g.m):
        head[h] = g.dart_face[h ^ 1]
    rotations = [g.face_walk(f) for f in range(g.f)]
    return EmbeddedGraph(g.f, head, rotations, list(g.edge_w), list(g.edge_art),
                         [False] * g.f, g.precision, g.scale_bits, g.huge,
                         g.perturbed)


# -- combinatorial turn predicates ----------------------------------------

def cyclic_rank(g: EmbeddedGraph, v: int, ref_out: int, dart: int) -> int:
    """Steps from ref_out to dart in the clockwise rotation around v."""
    k = len(g.rotations[v])
    return (g.dart_pos[dart] - g.dart_pos[ref_out]) % k


def emanates_side(g: EmbeddedGraph, base: Sequence[int], branch: Sequence[int]) -> str:
    """Side on which ``branch`` leaves ``base``.

    base and branch are dart paths; branch starts on base, shares a maximal
    prefix with it (traversed in the same direction) and then departs.
    """
    if not base or not branch:
        raise NotEmanating("empty path")
    base_edges = {h >> 1: i for i, h in enumerate(base)}
    start = g.tail(branch[0])
    base_verts = path_vertices(g, base)
    if start not in base_verts[1:-1]:
        raise NotEmanating("branch must start interior to base")
    i = 0
    while i < len(branch) and (branch[i] >> 1) in base_edges:
        if branch[i] != base[base_edges[branch[i] >> 1]]:
            raise NotEmanating("shared run traversed against base direction")
        i += 1
    if i == len(branch):
        raise NotEmanating("branch is a subpath of base")
    bz = branch[i]
    q = g.tail(bz)
    if i == 0:
        k = base_verts.index(q)
        ref_in = base[k - 1] if k > 0 else None
        base_next = base[k] if k < len(base) else None
    else:
        ref_in = branch[i - 1]
        k = base_edges[ref_in >> 1] + 1
        base_next = base[k] if k < len(base) else None
    if ref_in is None or base_next is None:
        raise NotEmanating("divergence at an endpoint of base")
    r_branch = cyclic_rank(g, q, ref_in ^ 1, bz)
    r_base = cyclic_rank(g, q, ref_in ^ 1, base_next)
    if r_branch == r_base:
        raise NotEmanating("branch does not diverge")
    return LEFT if r_branch < r_base else RIGHT


def face_anchor_dart(g: EmbeddedGraph, f: int, u: int) -> int:
    """The face dart of f leaving u; enumeration of u's rotation starting
    here matches the clockwise order anchored just after an artificial
    vertex embedded inside f."""
    for h in g.rotations[u]:
        if g.dart_face[h] == f:
            return h
    raise FaceNotFound(f"vertex {u} not on face {f}")


def turn(g: EmbeddedGraph, f: int, u: int, v: int, v2: int, sp_source) -> str:
    """Turn of u~>v w.r.t. u~>v2 from face f, decided on an explicit
    shortest-path tree.

    ``sp_source`` is the (parent_dart, dist) pair for root u (as returned by
    shortest_path_tree) or a callable producing it.
    """
    if callable(sp_source):
        parent, _dist = sp_source(u)
    else:
        parent, _dist = sp_source
    return tree_turn(g, u, parent, v, v2, face_anchor_dart(g, f, u))


def tree_turn(g: EmbeddedGraph, root: int, parent: list[int], c: int, v: int,
              anchor_out: int) -> str:
    """Turn of root~>c w.r.t. root~>v inside the parent-dart tree, with the
    root's rotation anchored at ``anchor_out``."""
    if c == v or c == root or v == root:
        return PREFIX
    pc = tree_path_darts(g, parent, c)
    pv = tree_path_darts(g, parent, v)
    k = 0
    limit = min(len(pc), len(pv))
    while k < limit and pc[k] == pv[k]:
        k += 1
    if k == len(pc) or k == len(pv):
        return PREFIX
    x = root if k == 0 else g.head[pc[k - 1]]
    ref_out = anchor_out if k == 0 else (pc[k - 1] ^ 1)
    rc = cyclic_rank(g, x, ref_out, pc[k])
    rv = cyclic_rank(g, x, ref_out, pv[k])
    return LEFT if rc < rv else RIGHT
