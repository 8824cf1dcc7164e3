import itertools
import json
import math
import random
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from peripherality import measures as M
from peripherality.families import (
    balanced_spider,
    complete,
    complete_bipartite,
    cycle,
    path,
    spider,
    star,
    two_star_bridge,
)
from peripherality.graph_core import DisconnectedGraphError, Graph, build_graph
from peripherality.trees import enumerate_free_trees

from grids import random_connected, random_tree
from oracles import betweenness_by_paths, graph_totals, mostar_vertex, total_mostar_vertex


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


# -- worked examples ---------------------------------------------------------

def test_mostar_examples():
    assert M.mostar(star(4)).total == 12
    assert M.mostar(path(5)).total == 8
    mo_v = M.mostar_vertex(star(5))
    assert mo_v[0] == Fraction(5 * 4, 2)


def test_terminal_mostar_examples():
    assert M.terminal_mostar(star(4)).total == 8
    assert M.terminal_mostar(cycle(6)).total == 0
    assert M.terminal_mostar(spider((1, 2, 3))).total == 6


def test_total_mostar_examples():
    assert M.total_mostar(path(5)).total == 14
    assert M.total_mostar(complete(6)).total == 0
    vals = M.total_mostar(star(4)).values
    assert vals[0] == 6
    # (n-1)/2 with four leaves; see the decisions log for the listed value of 2
    assert all(vals[v] == Fraction(3, 2) for v in range(1, 5))
    assert sum(vals.values()) == M.total_mostar(star(4)).total


def test_irregularity_examples():
    assert M.irregularity(star(4)).total == 12
    assert M.irregularity(cycle(7)).total == 0
    assert M.irregularity(complete(5)).total == 0


def test_peripherality_examples():
    p = M.peripherality(star(6))
    assert p.values[0] == 0 and all(p.values[v] == 1 for v in range(1, 7))
    assert p.total == 6
    assert M.peripherality(path(4)).total == 4
    vals = M.peripherality(balanced_spider(3, 4)).values
    # vertex at distance j from the centre on a leg
    for leg in range(3):
        for j in range(1, 5):
            assert vals[1 + leg * 4 + (j - 1)] == 1 + 3 * (j - 1)


def test_sum_peripherality_examples():
    s = M.sum_peripherality(complete(5))
    assert all(x == 4 for x in s.values.values()) and s.total == 20
    s = M.sum_peripherality(star(5))
    assert s.values[0] == 5 and s.values[1] == 9 and s.total == 50
    assert M.sum_peripherality(path(3)).total == 8


def test_edge_peripherality_examples():
    assert M.edge_peripherality(star(7)).total == 0
    assert M.edge_peripherality(path(6)).total == 4
    assert M.edge_peripherality(balanced_spider(3, 3)).total == 15


def test_edge_sum_peripherality_examples():
    e = M.edge_sum_peripherality(complete(4))
    assert all(x == 4 for x in e.values.values()) and e.total == 24
    e = M.edge_sum_peripherality(complete_bipartite(2, 3))
    assert all(x == 10 for x in e.values.values()) and e.total == 60
    assert M.edge_sum_peripherality(star(5)).total == 40


def test_edge_degree_and_eccentricity_examples():
    g = two_star_bridge(4, 6)
    assert M.edge_degree(g)[(0, 4)] == 8
    p = path(8)
    assert M.edge_eccentricity(p)[(3, 4)] == 3
    q = path(9)
    assert M.edge_eccentricity(q)[(3, 4)] == 4
    assert M.edge_eccentricity(q)[(4, 5)] == 4


def test_classical_examples():
    bc = M.betweenness(star(4))
    assert bc[0] == 6 and all(bc[v] == 0 for v in range(1, 5))
    ec = M.eigenvector_centrality(cycle(9))
    assert all(abs(x - 1 / 3) < 1e-9 for x in ec.values())
    cc = M.closeness(path(3))
    assert cc == {0: Fraction(1, 3), 1: Fraction(1, 2), 2: Fraction(1, 3)}


def test_report_examples():
    rep = M.measure_report(path(5))
    assert rep.graph["Mo"] == 8 and rep.graph["Mo_total"] == 14
    assert rep.graph["irr"] == 2 and rep.graph["peri"] == 8
    rep = M.measure_report(complete(4))
    g = rep.graph
    assert (g["Mo"], g["Mo_total"], g["peri"], g["eperi"], g["irr"]) == (0, 0, 0, 0, 0)
    assert g["spr"] == 12 and g["espr"] == 24


def test_report_serialization_is_deterministic():
    g = balanced_spider(3, 2)
    a = M.measure_report(g).to_json()
    b = M.measure_report(build_graph(g.n, list(reversed(g.edges)))).to_json()
    assert a == b
    d = json.loads(a)
    assert set(d) == {"graph", "vertices", "edges"}
    assert d["vertices"]["0"]["Mo"] == 4.5  # three centre edges, each |5 - 2|, halved
    csv_text = M.measure_report(g).to_csv()
    assert csv_text.splitlines()[0].startswith("kind,id,deg,ecc,cc,bc,ec")
    assert len(csv_text.splitlines()) == 1 + g.n + g.m


def test_disconnected_errors():
    g = build_graph(4, [(0, 1), (2, 3)])
    for fn in (M.eccentricity, M.edge_eccentricity, M.closeness, M.measure_report):
        with pytest.raises(DisconnectedGraphError):
            fn(g)
    # irregularity works on any graph
    assert M.irregularity(g).total == 0


def test_graph_measure_lookup():
    assert M.graph_measure(star(3), "Mo") == 6
    with pytest.raises(KeyError):
        M.graph_measure(star(3), "nope")


# -- independent oracles -----------------------------------------------------

def test_betweenness_matches_path_enumeration():
    rng = random.Random(3)
    for _ in range(40):
        g = random_connected(rng, rng.randint(2, 7))
        assert M.betweenness(g) == betweenness_by_paths(g)


def test_classical_matches_networkx():
    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(2, 14)
        g = random_connected(rng, n)
        h = to_nx(g)
        bc = nx.betweenness_centrality(h, normalized=False)
        ours = M.betweenness(g)
        assert all(abs(float(ours[v]) - bc[v]) < 1e-9 for v in range(n))
        cc = M.closeness(g)
        dsum = {v: sum(nx.single_source_shortest_path_length(h, v).values()) for v in range(n)}
        assert all(cc[v] == Fraction(1, dsum[v]) for v in range(n))
        assert M.eccentricity(g) == nx.eccentricity(h)


def test_eigenvector_residual_and_sign():
    rng = random.Random(8)
    for _ in range(30):
        g = random_connected(rng, rng.randint(2, 20))
        ec = M.eigenvector_centrality(g)
        x = np.array([ec[v] for v in range(g.n)])
        a = g.adjacency_matrix().astype(float)
        lam = x @ a @ x
        assert np.linalg.norm(a @ x - lam * x) < 1e-8
        assert abs(np.linalg.norm(x) - 1) < 1e-12
        assert (x >= 0).all()
        ref = nx.eigenvector_centrality_numpy(to_nx(g))
        assert all(abs(ec[v] - abs(ref[v])) < 1e-6 for v in range(g.n))


def test_eigenvector_bipartite_converges():
    ec = M.eigenvector_centrality(complete_bipartite(2, 5))
    assert abs(ec[0] - ec[1]) < 1e-12
    assert len({round(ec[v], 9) for v in range(2, 7)}) == 1


def test_structural_twins_tie_in_ec():
    g = star(6)
    ec = M.eigenvector_centrality(g)
    assert len({round(ec[v], 9) for v in range(1, 7)}) == 1


def test_totals_against_pair_forms():
    rng = random.Random(9)
    for _ in range(60):
        g = random_connected(rng, rng.randint(1, 9))
        ref = graph_totals(g)
        for name in ("Mo", "Mo_total", "Mo_terminal", "irr", "peri", "spr", "eperi", "espr"):
            assert M.graph_measure(g, name) == ref[name], name
        assert M.mostar_vertex(g) == mostar_vertex(g)
        assert M.total_mostar(g).values == total_mostar_vertex(g)


# -- properties ----------------------------------------------------------------

connected_graphs = st.builds(
    lambda n, seed: random_connected(random.Random(seed), n),
    st.integers(2, 14), st.integers(0, 1_000_000),
)


@settings(max_examples=100, deadline=None)
@given(connected_graphs)
def test_decomposition_identities(g):
    rep = M.measure_report(g)
    assert sum(Fraction(r["Mo"]) for r in rep.vertices.values()) == rep.graph["Mo"]
    assert sum(Fraction(r["Mo_total"]) for r in rep.vertices.values()) == rep.graph["Mo_total"]
    for f in ("peri", "spr"):
        assert sum(r[f] for r in rep.vertices.values()) == rep.graph[f]
    for f in ("Mo", "irr", "eperi", "espr", "Mo_terminal"):
        assert sum(r[f] for r in rep.edges.values()) == rep.graph[f]


@settings(max_examples=100, deadline=None)
@given(connected_graphs)
def test_edge_sandwiches(g):
    deg = g.degrees()
    ecc = M.eccentricity(g)
    edeg, eecc = M.edge_degree(g), M.edge_eccentricity(g)
    for u, v in g.edges:
        assert max(deg[u], deg[v]) - 1 <= edeg[(u, v)] <= deg[u] + deg[v] - 2
        lo = min(ecc[u], ecc[v])
        assert lo - 1 <= eecc[(u, v)] <= lo


@settings(max_examples=100, deadline=None)
@given(connected_graphs)
def test_eperi_below_endpoint_peri(g):
    p = M.peripherality(g).values
    for (u, v), x in M.edge_peripherality(g).values.items():
        assert x <= min(p[u], p[v])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 25), st.integers(0, 1_000_000))
def test_tree_eperi_below_peri(n, seed):
    t = random_tree(random.Random(seed), n)
    assert M.edge_peripherality(t).total <= M.peripherality(t).total


def degree_order_bound(g: Graph) -> int:
    """Sum of e_i (n - e_i) with vertices in non-increasing degree order."""
    order = sorted(range(g.n), key=lambda v: -g.degree(v))
    pos = {v: i for i, v in enumerate(order)}
    total = 0
    for v in order:
        e = sum(1 for w in g.adj[v] if pos[w] < pos[v])
        total += e * (g.n - e)
    return total


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(0, 1_000_000))
def test_mostar_degree_order_bound(n, seed):
    g = random_connected(random.Random(seed), n)
    assert M.mostar(g).total <= degree_order_bound(g)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(0, 1_000_000))
def test_spr_diameter_bound(n, seed):
    g = random_connected(random.Random(seed), n)
    D = int(g.distances().max())
    spr = M.sum_peripherality(g).total
    # spr <= n^2(n-1)/2 - n(n-1)^2/(2D) + n(n-1)/2, times 2D
    assert 2 * D * spr <= D * n * n * (n - 1) - n * (n - 1) ** 2 + D * n * (n - 1)


def equal_distance_pairs(d: np.ndarray, w: int) -> int:
    counts = np.bincount(d[w])
    return int(sum(c * (c - 1) // 2 for c in counts))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(0, 1_000_000))
def test_equal_distance_pairs_bound(n, seed):
    g = random_connected(random.Random(seed), n)
    d = g.distances()
    ecc = M.eccentricity(g)
    for w in range(n):
        s = equal_distance_pairs(d, w)
        # s >= ((n-1)^2/ecc - (n-1))/2
        assert 2 * ecc[w] * s >= (n - 1) ** 2 - (n - 1) * ecc[w]


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 30), st.integers(0, 1_000_000))
def test_espr_lower_bound(n, seed):
    g = random_connected(random.Random(seed), n)
    assert M.edge_sum_peripherality(g).total >= 2 * (n - 2) * g.m


def test_tree_mostar_leaf_bound_all_trees():
    # every pendant edge contributes n - 2 and a tree has at least Delta leaves
    for n in range(3, 11):
        for t in enumerate_free_trees(n):
            assert M.mostar(t).total >= max(t.degrees()) * (n - 2)


def test_cited_tree_bound_fails_for_stars():
    # Mo(K_{1,n-1}) = (n-1)(n-2) sits below 2 * Delta * (n-3) = 2(n-1)(n-3) once n >= 5
    for n in range(5, 30):
        t = star(n - 1)
        assert M.mostar(t).total == (n - 1) * (n - 2) < 2 * (n - 1) * (n - 3)


def test_spider_spr_and_peri_grow_outward():
    for a in (3, 4):
        for b in (2, 3, 5):
            g = balanced_spider(a, b)
            spr = M.sum_peripherality(g).values
            peri = M.peripherality(g).values
            leg = [0] + [1 + j for j in range(b)]
            assert all(spr[x] < spr[y] for x, y in itertools.pairwise(leg))
            assert all(peri[x] < peri[y] for x, y in itertools.pairwise(leg))


def test_format_number():
    assert M.format_number(Fraction(5, 2)) == 2.5
    assert M.format_number(Fraction(1, 3)) == float(format(1 / 3, ".12g"))
    assert M.format_number(np.int64(4)) == 4
    assert math.isclose(M.format_number(math.pi), 3.14159265359)
