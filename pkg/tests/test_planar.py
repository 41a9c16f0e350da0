import random

import pytest

from labeldist import planar
from labeldist.planar import (
    build_from_rotation, triangulate, perturb_for_unique_sp, check_unique_sp,
    dual, dijkstra, tree_path_darts, path_vertices, emanates_side, turn,
    parse_graph_text, write_graph_text,
    InconsistentAdjacency, NotEmanating, LEFT, RIGHT, PREFIX,
)
from labeldist.generate import grid_graph, random_triangulation

from conftest import cycle_graph, k4_graph, bellman_ford, prepared


def test_c4_build_counts():
    g = cycle_graph(4)
    assert (g.n, g.m, g.f) == (4, 4, 2)
    assert sorted(len(g.face_walk(f)) for f in range(g.f)) == [4, 4]


def test_single_edge_scaled_weight():
    g = build_from_rotation(2, [(0, 1)], ["1.5"], [[0], [0]], precision=1)
    assert g.edge_w[0] == 15
    assert g.f == 1


def test_inconsistent_adjacency():
    with pytest.raises(InconsistentAdjacency):
        build_from_rotation(3, [(0, 1), (1, 2)], ["1", "1"],
                            [[0], [0, 1, 1], [1]])
    with pytest.raises(InconsistentAdjacency):
        build_from_rotation(2, [(0, 0)], ["1"], [[0, 0], []])


def test_triangulate_c4():
    t = triangulate(cycle_graph(4))
    assert (t.n, t.m, t.f) == (6, 12, 8)
    assert all(len(t.face_walk(f)) == 3 for f in range(t.f))
    assert sum(t.vert_art) == 2
    assert all(t.edge_w[e] >= t.huge for e in range(t.m) if t.edge_art[e])


def test_triangulate_k4_noop():
    g = k4_graph()
    t = triangulate(g)
    assert (t.n, t.m, t.f) == (4, 6, 4)
    assert sum(t.vert_art) == 0


def test_triangulate_c5():
    t = triangulate(cycle_graph(5))
    assert (t.n, t.m, t.f) == (7, 15, 10)


def test_triangulate_single_edge_digon():
    g = build_from_rotation(2, [(0, 1)], ["1"], [[0], [0]])
    t = triangulate(g)
    assert (t.n, t.m, t.f) == (3, 3, 2)


def test_check_unique_sp_path_and_cycle():
    p3 = build_from_rotation(3, [(0, 1), (1, 2)], ["1", "1"], [[0], [0, 1], [1]])
    assert check_unique_sp(p3)
    assert not check_unique_sp(cycle_graph(4))


def test_perturb_gives_uniqueness_and_determinism():
    g = triangulate(cycle_graph(4))
    p1 = perturb_for_unique_sp(g, seed=3)
    p2 = perturb_for_unique_sp(g, seed=3)
    assert p1.edge_w == p2.edge_w
    assert check_unique_sp(p1)
    # exactly one shortest 0->2 path now
    dist, parent = dijkstra(p1, 0)
    assert dist[2] < p1.huge


def test_perturb_preserves_path_order():
    g = triangulate(grid_graph(3, seed=2))
    p = perturb_for_unique_sp(g, seed=11)
    for src in range(g.n):
        d0 = bellman_ford(g, src)
        d1, _ = dijkstra(p, src)
        for v in range(g.n):
            if d0[v] is not None and d0[v] < g.huge:
                assert (d1[v] >> (p.scale_bits - g.scale_bits)) == d0[v]


def test_dual_counts():
    k3 = cycle_graph(3)
    d = dual(k3)
    assert (d.n, d.m) == (2, 3)
    t = triangulate(cycle_graph(4))
    dt = dual(t)
    assert (dt.n, dt.m) == (8, 12)
    assert dt.f == t.n


def test_dual_dual_k4_isomorphic():
    g = k4_graph()
    dd = dual(dual(g))
    assert (dd.n, dd.m, dd.f) == (g.n, g.m, g.f)
    import itertools
    def signature(gr):
        return sorted(sorted(len(gr.rotations[gr.head[h]]) for h in gr.rotations[v])
                      for v in range(gr.n))
    assert signature(dd) == signature(g)
    # explicit isomorphism exists (brute force over vertex bijections)
    def adjacent(gr, u, v):
        return any(gr.head[h] == v for h in gr.rotations[u])
    found = False
    for perm in itertools.permutations(range(4)):
        if all(adjacent(g, u, v) == adjacent(dd, perm[u], perm[v])
               for u in range(4) for v in range(4) if u != v):
            found = True
            break
    assert found


def test_sp_tree_grid_corner():
    g = grid_graph(2, unit_weights=True)
    dist, parent = dijkstra(g, 0)
    assert dist[3] in (1, 2)  # diagonal may shortcut
    g2 = build_from_rotation(4, [(0, 1), (1, 3), (3, 2), (2, 0)], ["1"] * 4,
                             [[3, 0], [0, 1], [2, 3], [1, 2]])
    dist, parent = dijkstra(g2, 0)
    assert dist[3] == 2


def test_sp_tree_infinite_isolation():
    t = triangulate(cycle_graph(4))
    dist, parent = dijkstra(t, 0)
    for v in range(t.n):
        if t.vert_art[v]:
            assert dist[v] >= t.huge
        else:
            assert dist[v] < t.huge


def test_sp_matches_bellman_ford_random():
    g = prepared(random_triangulation(50, seed=13), seed=4)
    for src in random.Random(0).sample(range(g.n), 6):
        bf = bellman_ford(g, src)
        dj, _ = dijkstra(g, src)
        assert bf == dj


def test_emanates_star():
    # center c=3 with spokes to 0,1,2 in clockwise rotation order (0,1,2)
    g = build_from_rotation(4, [(3, 0), (3, 1), (3, 2)], ["1"] * 3,
                            [[0], [1], [2], [0, 1, 2]])
    base = [1, 4]    # 0->3 (dart 1), 3->2 (dart 4)
    branch = [2]     # 3->1
    side = emanates_side(g, base, branch)
    # rotation at 3 is (e0,e1,e2): from incoming 0->3, clockwise: e1 then e2
    assert side == LEFT
    mirrored = build_from_rotation(4, [(3, 0), (3, 1), (3, 2)], ["1"] * 3,
                                   [[0], [1], [2], [2, 1, 0]])
    assert emanates_side(mirrored, base, branch) == RIGHT


def test_emanates_prefix_error():
    g = build_from_rotation(4, [(3, 0), (3, 1), (3, 2)], ["1"] * 3,
                            [[0], [1], [2], [0, 1, 2]])
    with pytest.raises(NotEmanating):
        emanates_side(g, [1, 4], [4])


def test_turn_prefix_cases(small_instances):
    g = small_instances[0]
    u = 0
    f = g.dart_face[g.rotations[0][0]]
    sp = (dijkstra(g, u)[1], dijkstra(g, u)[0])
    parent, dist = sp[0], sp[1]
    assert turn(g, f, u, 5, 5, (parent, dist)) == PREFIX
    # v on path u~>v2 -> Prefix
    path = tree_path_darts(g, parent, 7)
    verts = path_vertices(g, path)
    if len(verts) > 2:
        assert turn(g, f, u, verts[1], 7, (parent, dist)) == PREFIX


def test_turn_antisymmetry(small_instances, rng):
    for g in small_instances:
        u = 0
        f = g.dart_face[g.rotations[u][0]]
        dist, parent = dijkstra(g, u)
        reals = [v for v in range(g.n) if not g.vert_art[v]]
        for _ in range(40):
            v, v2 = rng.sample(reals, 2)
            a = turn(g, f, u, v, v2, (parent, dist))
            b = turn(g, f, u, v2, v, (parent, dist))
            if a == PREFIX:
                assert b == PREFIX
            else:
                assert {a, b} == {LEFT, RIGHT}


def test_lemma1_single_shared_subpath(small_instances, rng):
    for g in small_instances:
        reals = [v for v in range(g.n) if not g.vert_art[v]]
        for _ in range(25):
            u, v, x, y = (rng.choice(reals) for _ in range(4))
            if len({u, v, x, y}) < 4:
                continue
            _, pu = dijkstra(g, u)
            _, px = dijkstra(g, x)
            e1 = {h >> 1 for h in tree_path_darts(g, pu, v)}
            e2 = {h >> 1 for h in tree_path_darts(g, px, y)}
            shared = e1 & e2
            if not shared:
                continue
            # shared edges must form one contiguous subpath of u~>v
            darts = tree_path_darts(g, pu, v)
            idx = [i for i, h in enumerate(darts) if (h >> 1) in shared]
            assert idx == list(range(idx[0], idx[0] + len(idx)))


def test_triangulate_preserves_distances():
    g = random_triangulation(20, seed=3)
    # knock out the triangulated-ness by removing nothing; instead use a cycle
    c = cycle_graph(6, weights=[str(x) for x in (1, 2, 3, 1, 2, 3)])
    t = triangulate(c)
    for src in range(c.n):
        before = bellman_ford(c, src)
        after = bellman_ford(t, src)
        for v in range(c.n):
            assert before[v] == after[v]


def test_text_roundtrip():
    g = grid_graph(3, seed=8)
    text = write_graph_text(g)
    g2 = parse_graph_text(text)
    assert g2.n == g.n and g2.m == g.m and g2.f == g.f
    assert g2.edge_w == g.edge_w
    assert write_graph_text(g2) == text
    bad = text.replace("planar", "plnar", 1)
    with pytest.raises(planar.GraphError):
        parse_graph_text(bad)
