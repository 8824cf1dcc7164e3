import itertools
import random
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peripherality.graph_core import (
    UNREACHABLE,
    DisconnectedGraphError,
    DuplicateEdgeWarning,
    Graph,
    GraphError,
    VertexWeightedGraph,
    all_pairs,
    bfs_distances,
    build_graph,
    diameter,
    disjoint_union,
    edge_vertex_distance,
    expand,
    format_graph,
    is_connected,
    n_closer,
    n_closer_weighted,
    parse_graph,
    pendant_vertices,
    relabel,
)
from peripherality.families import complete_bipartite, cycle, path, star

from grids import random_connected
from oracles import floyd_warshall


def test_build_k2():
    g = build_graph(2, [(0, 1)])
    assert g.n == 2 and g.m == 1 and g.edges == ((0, 1),)


def test_duplicate_edges_collapse_with_warning():
    with pytest.warns(DuplicateEdgeWarning):
        g = build_graph(3, [(0, 1), (1, 0)])
    assert g.m == 1


def test_self_loop_rejected():
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])


def test_out_of_range_rejected():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])


def test_edges_are_normalized_and_sorted():
    g = build_graph(4, [(3, 2), (1, 0), (2, 0)])
    assert g.edges == ((0, 1), (0, 2), (2, 3))


def test_bfs_rows():
    assert bfs_distances(path(4), 0) == [0, 1, 2, 3]
    assert bfs_distances(star(4), 0) == [0, 1, 1, 1, 1]
    two = build_graph(4, [(0, 1), (2, 3)])
    assert bfs_distances(two, 0) == [0, 1, UNREACHABLE, UNREACHABLE]
    with pytest.raises(GraphError):
        bfs_distances(two, 4)


def test_cycle_distances_and_diameter():
    d = all_pairs(cycle(5))
    off = d[~np.eye(5, dtype=bool)]
    assert set(off.tolist()) == {1, 2}
    assert diameter(cycle(5)) == 2


def test_diameter_disconnected_raises():
    with pytest.raises(DisconnectedGraphError):
        diameter(build_graph(3, [(0, 1)]))


def test_n_closer_examples():
    assert n_closer(path(3), 0, 1) == 1
    g = complete_bipartite(2, 3)
    assert n_closer(g, 0, 2) == 3
    assert n_closer(g, 2, 0) == 2
    with pytest.raises(GraphError):
        n_closer(g, 1, 1)


def test_n_closer_symmetric_in_cycle():
    g = cycle(7)
    assert n_closer(g, 0, 1) == n_closer(g, 1, 0) == 3


def test_edge_vertex_distance():
    assert edge_vertex_distance(path(4), (0, 1), 3) == 2
    assert edge_vertex_distance(cycle(6), (0, 1), 3) == 2
    assert edge_vertex_distance(cycle(6), (0, 1), 1) == 0


def test_pendants():
    assert pendant_vertices(star(5)) == [1, 2, 3, 4, 5]
    assert pendant_vertices(path(2)) == [0, 1]
    assert pendant_vertices(cycle(4)) == []


def test_text_round_trip():
    g = build_graph(5, [(0, 1), (1, 2), (3, 4)])
    assert parse_graph(format_graph(g)).edges == g.edges
    text = "# comment\n4 2\n1 0   # reversed\n\n2 3\n"
    assert parse_graph(text).edges == ((0, 1), (2, 3))


@pytest.mark.parametrize("text", ["", "3\n", "2 2\n0 1\n", "2 1\n0 x\n", "2 1\n0 0\n"])
def test_parse_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


def test_disjoint_union_offsets():
    g, off = disjoint_union([path(2), cycle(3)])
    assert off == [0, 2] and g.n == 5 and g.m == 4
    assert not is_connected(g)


def test_weighted_examples():
    k2 = build_graph(2, [(0, 1)])
    wg = VertexWeightedGraph(k2, (5, 1))
    assert n_closer_weighted(wg, 0, 1) == 5
    assert n_closer_weighted(wg, 1, 0) == 1
    unit = VertexWeightedGraph(path(4), (1, 1, 1, 1))
    assert all(n_closer_weighted(unit, u, v) == n_closer(path(4), u, v)
               for u in range(4) for v in range(4) if u != v)


def test_weighted_rejects_bad_weights():
    with pytest.raises(GraphError):
        VertexWeightedGraph(path(2), (1, 0))
    with pytest.raises(GraphError):
        VertexWeightedGraph(path(2), (1,))


def test_weighted_matches_expansion_random():
    rng = random.Random(11)
    for _ in range(150):
        n = rng.randint(2, 6)
        core = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        w = tuple(rng.randint(1, 20) for _ in range(n))
        hub = rng.choice([None, *range(n)])
        wg = VertexWeightedGraph(core, w, hub)
        x = expand(wg)
        assert x.n == wg.order()
        for u, v in itertools.permutations(range(n), 2):
            assert n_closer_weighted(wg, u, v) == n_closer(x, u, v)


def test_all_pairs_matches_floyd_warshall():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(1, 8)
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
        fw = floyd_warshall(g)
        d = all_pairs(g)
        for i in range(n):
            assert bfs_distances(g, i) == d[i].tolist()
            for j in range(n):
                expect = UNREACHABLE if fw[i][j] == float("inf") else fw[i][j]
                assert d[i, j] == expect


def test_distances_cached_read_only():
    g = path(5)
    d = g.distances()
    assert g.distances() is d
    with pytest.raises(ValueError):
        d[0, 0] = 3


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 12), st.integers(0, 10_000))
def test_closer_partition(n, seed):
    g = random_connected(random.Random(seed), n)
    d = g.distances()
    for u, v in itertools.permutations(range(n), 2):
        ties = int(np.count_nonzero(d[u] == d[v]))
        assert n_closer(g, u, v) + n_closer(g, v, u) + ties == n
        assert n_closer(g, u, v) >= 1


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 10), st.integers(0, 10_000))
def test_relabel_preserves_distance_multiset(n, seed):
    rng = random.Random(seed)
    g = random_connected(rng, n)
    perm = list(range(n))
    rng.shuffle(perm)
    h = relabel(g, perm)
    dg, dh = g.distances(), h.distances()
    for u in range(n):
        for v in range(n):
            assert dg[u, v] == dh[perm[u], perm[v]]


def test_no_warning_for_clean_input():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        build_graph(3, [(0, 1), (1, 2)])
