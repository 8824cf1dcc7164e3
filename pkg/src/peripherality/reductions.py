"""Clique gadgets that encode CLIQUE as measure-constrained clique problems.

Four constructions:

* ``H``: pad every vertex with pendants up to the maximum degree, then add a
  universal vertex ``c`` carrying ``2|V(G')|`` extra pendants.  Inside the
  original graph every vertex then has the same degree, so Mostar differences
  and irregularities vanish there and nowhere near ``c``.
* ``H_pruned``: the same after deleting components with at most two vertices,
  so every kept vertex has degree at least three in the gadget.
* ``J``: vertex ``v_i`` gets ``4^(n+i)`` pendants and a universal ``c`` gets
  ``4^(4n)`` more.  Degrees become pairwise far apart, so distinct pairs get
  distinct Mostar values.  Built as a ``VertexWeightedGraph`` because it is
  astronomically large.
* ``X``: a universal vertex ``c`` plus one pendant ``p`` on ``c``, which pins
  every eccentricity to 1 (``c``) or 2 (everything else).

``constrained_clique`` solves the target problems by exhaustive search and
``validate_reduction`` checks both sides of an equivalence on one input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

import numpy as np

from . import measures as M
from .graph_core import (
    Graph,
    VertexWeightedGraph,
    bfs_distances,
    build_graph,
    expand,
    n_closer_weighted,
    representative_graph,
)

SEARCH_CAP = 10**7


class ReductionError(ValueError):
    pass


@dataclass
class GadgetOutput:
    kind: str
    graph: Graph | VertexWeightedGraph
    core_map: dict[int, int]
    special: dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "core_map": {str(k): v for k, v in sorted(self.core_map.items())},
            "special": dict(sorted(self.special.items())),
        }
        if isinstance(self.graph, VertexWeightedGraph):
            core = self.graph.core
            out["graph"] = {"n": core.n, "edges": [list(e) for e in core.edges]}
            out["weights"] = [str(w) for w in self.graph.weights]
            out["hub"] = self.graph.hub
            out["order"] = str(self.graph.order())
        else:
            out["graph"] = {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]}
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def gadget_from_dict(d: dict[str, Any]) -> GadgetOutput:
    core = build_graph(d["graph"]["n"], [tuple(e) for e in d["graph"]["edges"]])
    graph: Graph | VertexWeightedGraph = core
    if "weights" in d:
        graph = VertexWeightedGraph(core, tuple(int(w) for w in d["weights"]), d.get("hub"))
    return GadgetOutput(d["kind"], graph, {int(k): v for k, v in d["core_map"].items()}, d.get("special", {}))


# -- constructions ----------------------------------------------------------

def _components(g: Graph) -> list[list[int]]:
    seen, comps = [False] * g.n, []
    for s in range(g.n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g.adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _h_from(g: Graph, kind: str, core_map: dict[int, int]) -> GadgetOutput:
    n = g.n
    delta = max((g.degree(v) for v in range(n)), default=0)
    edges = list(g.edges)
    nxt = n
    for v in range(n):
        for _ in range(delta - g.degree(v)):
            edges.append((v, nxt))
            nxt += 1
    g_prime_order = nxt
    c = nxt
    edges.extend((x, c) for x in range(g_prime_order))
    for i in range(2 * g_prime_order):
        edges.append((c, c + 1 + i))
    return GadgetOutput(kind, build_graph(c + 1 + 2 * g_prime_order, edges), core_map, {"c": c})


def build_H(g: Graph) -> GadgetOutput:
    """Degree-equalized copy of ``g`` with a universal vertex carrying ``2|V(G')|`` pendants."""
    return _h_from(g, "H", {v: v for v in range(g.n)})


def build_H_pruned(g: Graph) -> GadgetOutput:
    """``build_H`` on ``g`` without its components of order at most two."""
    keep = [v for comp in _components(g) if len(comp) > 2 for v in comp]
    if not keep:
        return GadgetOutput("H_pruned", build_graph(1, []), {}, {"c": 0})
    index = {v: i for i, v in enumerate(keep)}
    sub = build_graph(len(keep), [(index[u], index[v]) for u, v in g.edges if u in index and v in index])
    return _h_from(sub, "H_pruned", index)


def j_weights(n: int) -> tuple[int, ...]:
    """Weights of ``J`` for an order-``n`` input: ``v_i`` (1-based ``i``) then ``c``."""
    return tuple(4 ** (n + i) + 1 for i in range(1, n + 1)) + (4 ** (4 * n) + 1,)


def build_J(g: Graph, prune: bool = False) -> GadgetOutput:
    """Weighted gadget: ``v_i`` carries ``4^(n+i)`` pendants, universal ``c`` carries ``4^(4n)``.

    ``c`` is joined to every other vertex, the pendants of the ``v_i``
    included, so those pendants have degree two.  With ``prune`` the
    components of order at most two are removed first (needed when the
    target measure is peripherality).
    """
    core_map = {v: v for v in range(g.n)}
    if prune:
        keep = [v for comp in _components(g) if len(comp) > 2 for v in comp]
        core_map = {v: i for i, v in enumerate(keep)}
        g = build_graph(len(keep), [(core_map[u], core_map[v]) for u, v in g.edges if u in core_map and v in core_map])
    n = g.n
    if n < 2:
        raise ReductionError("the weighted gadget needs an input of order at least 2")
    c = n
    core = build_graph(n + 1, list(g.edges) + [(v, c) for v in range(n)])
    wg = VertexWeightedGraph(core, j_weights(n), hub=c)
    return GadgetOutput("J_pruned" if prune else "J", wg, core_map, {"c": c})


def build_X(g: Graph) -> GadgetOutput:
    """``g`` plus a universal vertex ``c`` and a pendant ``p`` hanging from ``c``."""
    n = g.n
    c, p = n, n + 1
    edges = list(g.edges) + [(v, c) for v in range(n)] + [(c, p)]
    return GadgetOutput("X", build_graph(n + 2, edges), {v: v for v in range(n)}, {"c": c, "p": p})


BUILDERS = {"H": build_H, "Hp": build_H_pruned, "J": build_J, "X": build_X}


# -- exact measures on weighted graphs ---------------------------------------

class WeightedMeasures:
    """Exact measures of a vertex-weighted graph without expanding it.

    The expansion splits into classes of interchangeable vertices: each core
    vertex on its own, and the implicit leaves of each anchor (all with the
    same neighbourhood).  Distances between classes follow from core
    distances, and every count becomes a multiplicity-weighted sum over
    classes.  Values are reported for core vertices and core edges.
    """

    def __init__(self, wg: VertexWeightedGraph):
        self.wg = wg
        self.n = wg.core.n
        rg, rep = representative_graph(wg)
        d = rg.distances()
        # classes: core vertices first, then one bundle per anchor with w > 1;
        # class i is represented by vertex i of the representative graph
        self.mult: list[int] = [1] * self.n + [wg.weights[z] - 1 for z in range(self.n) if rep[z] >= 0]
        self.K = K = len(self.mult)
        self.cd = [[int(d[a, b]) for b in range(K)] for a in range(K)]
        # distance between two distinct members of the same class
        self.spread = [0 if a < self.n else 2 for a in range(K)]
        self.N = [[self._closer(a, b) if a != b else 0 for b in range(K)] for a in range(K)]

    def _closer(self, u: int, v: int) -> int:
        cd, mult = self.cd, self.mult
        total = 1
        for x in range(self.K):
            if x != u and x != v and cd[x][u] < cd[x][v]:
                total += mult[x]
        if self.spread[u] < cd[u][v]:
            total += mult[u] - 1
        if cd[v][u] < self.spread[v]:
            total += mult[v] - 1
        return total

    def n_closer(self, u: int, v: int) -> int:
        return self.N[u][v]

    def _beats(self, x: int, u: int) -> bool:
        return x != u and self.N[x][u] > self.N[u][x]

    def degree(self, v: int) -> int:
        return self.wg.degree(v)

    def mostar(self, u: int, v: int) -> int:
        return abs(self.N[u][v] - self.N[v][u])

    def irr(self, u: int, v: int) -> int:
        return abs(self.degree(u) - self.degree(v))

    def peri(self, v: int) -> int:
        return sum(self.mult[x] for x in range(self.K) if self._beats(x, v))

    def eperi(self, u: int, v: int) -> int:
        return sum(self.mult[x] for x in range(self.K)
                   if x not in (u, v) and self._beats(x, u) and self._beats(x, v))

    def ecc(self, v: int) -> int:
        far = max(self.cd[x][v] for x in range(self.K) if x != v)
        return max(far, self.spread[v]) if self.mult[v] > 1 else far

    def eecc(self, u: int, v: int) -> int:
        return max((min(self.cd[x][u], self.cd[x][v]) for x in range(self.K) if x not in (u, v)), default=0)


def weighted_closer_check(wg: VertexWeightedGraph) -> bool:
    """Class engine and direct weighted count agree on every ordered core pair."""
    wm = WeightedMeasures(wg)
    n = wg.core.n
    return all(wm.n_closer(u, v) == n_closer_weighted(wg, u, v) for u in range(n) for v in range(n) if u != v)


# -- constrained clique -------------------------------------------------------

VERTEX_CONSTRAINTS = ("peri", "ecc")
EDGE_CONSTRAINTS = ("Mo", "irr", "eperi", "eecc")


@dataclass(frozen=True)
class Constraint:
    measure: str
    equal: bool

    def __str__(self) -> str:
        return f"{self.measure}{'=' if self.equal else '!='}"


def parse_constraint(text: str) -> Constraint:
    t = text.strip().replace("≠", "!=")
    for op, equal in (("!=", False), ("=", True)):
        if t.endswith(op):
            name = t[: -len(op)]
            if name in VERTEX_CONSTRAINTS + EDGE_CONSTRAINTS:
                return Constraint(name, equal)
    raise ReductionError(f"bad constraint {text!r}; use one of "
                         f"{[m + o for m in EDGE_CONSTRAINTS + VERTEX_CONSTRAINTS for o in ('=', '!=')]}")


def _values(g: Graph | VertexWeightedGraph, measure: str) -> dict:
    """Per-vertex or per-edge values of ``measure`` over the whole graph."""
    if isinstance(g, VertexWeightedGraph):
        wm = WeightedMeasures(g)
        core = g.core
        if measure in VERTEX_CONSTRAINTS:
            fn = wm.peri if measure == "peri" else wm.ecc
            return {v: fn(v) for v in range(core.n)}
        fn = {"Mo": wm.mostar, "irr": wm.irr, "eperi": wm.eperi, "eecc": wm.eecc}[measure]
        return {e: fn(*e) for e in core.edges}
    table = {
        "peri": lambda: M.peripherality(g).values,
        "ecc": lambda: M.eccentricity(g),
        "Mo": lambda: M.mostar(g).values,
        "irr": lambda: M.irregularity(g).values,
        "eperi": lambda: M.edge_peripherality(g).values,
        "eecc": lambda: M.edge_eccentricity(g),
    }
    return table[measure]()


def cliques(g: Graph, k: int, cap: int = SEARCH_CAP) -> Iterator[tuple[int, ...]]:
    """All ``k``-cliques in lexicographic order.

    Extends partial cliques by larger common neighbours only, which visits
    the cliques in the same order as a scan over all sorted ``k``-subsets
    would.  ``cap`` bounds the number of partial cliques examined.
    """
    if k <= 0:
        yield ()
        return
    nbrs = [set(a) for a in g.adj]
    visited = 0

    def extend(chosen: list[int], cand: list[int]) -> Iterator[tuple[int, ...]]:
        nonlocal visited
        if len(chosen) == k:
            yield tuple(chosen)
            return
        need = k - len(chosen)
        for i, v in enumerate(cand):
            if len(cand) - i < need:
                return
            visited += 1
            if visited > cap:
                raise ReductionError(f"clique search exceeded {cap} partial cliques")
            chosen.append(v)
            yield from extend(chosen, [w for w in cand[i + 1:] if w in nbrs[v]])
            chosen.pop()

    yield from extend([], list(range(g.n)))


def has_clique(g: Graph, k: int) -> bool:
    return next(cliques(g, k), None) is not None


def _satisfies(clique: Sequence[int], vals: dict, measure: str, equal: bool) -> bool:
    if measure in VERTEX_CONSTRAINTS:
        xs = [vals[v] for v in clique]
    else:
        xs = [vals[(u, v)] for i, u in enumerate(clique) for v in clique[i + 1:]]
    return len(set(xs)) <= 1 if equal else len(set(xs)) == len(xs)


def constrained_clique(g: Graph | VertexWeightedGraph, k: int, constraint: Constraint | str) -> tuple[int, ...] | None:
    """First ``k``-clique (lexicographic) whose vertex or edge values meet the constraint.

    On a weighted graph only core vertices are searched.  Implicit leaves have
    degree at most two there, so they lie in no clique of four or more
    vertices, and ``k >= 4`` is required.
    """
    if isinstance(constraint, str):
        constraint = parse_constraint(constraint)
    core = g.core if isinstance(g, VertexWeightedGraph) else g
    if isinstance(g, VertexWeightedGraph) and k < 4:
        raise ReductionError("weighted gadgets are searched on core vertices only, which needs k >= 4")
    vals = _values(g, constraint.measure)
    for cl in cliques(core, k):
        if _satisfies(cl, vals, constraint.measure, constraint.equal):
            return cl
    return None


def decide_ecc_neq(g: Graph, k: int) -> bool:
    """Is there a ``k``-clique with pairwise distinct eccentricities?

    Adjacent vertices have eccentricities within one of each other, so three
    distinct values never fit in a clique.
    """
    if k <= 1:
        return g.n >= k
    if k >= 3:
        return False
    ecc = M.eccentricity(g)
    return any(ecc[u] != ecc[v] for u, v in g.edges)


def decide_eecc_neq(g: Graph, k: int) -> bool:
    """Is there a ``k``-clique whose edges have pairwise distinct edge eccentricities?"""
    if k <= 1:
        return g.n >= k
    if k == 2:
        return g.m > 0
    return False


# -- validation ---------------------------------------------------------------

KINDS = {
    "H/Mo=": ("H", "Mo="),
    "H/irr=": ("H", "irr="),
    "Hp/peri=": ("Hp", "peri="),
    "Hp/eperi=": ("Hp", "eperi="),
    "X/ecc=": ("X", "ecc="),
    "X/eecc=": ("X", "eecc="),
    "J/Mo!=": ("J", "Mo!="),
    "J/irr!=": ("J", "irr!="),
    "Jp/peri!=": ("Jp", "peri!="),
}


@dataclass(frozen=True)
class ValidationResult:
    kind: str
    k: int
    has_clique: bool
    gadget_answer: bool
    witness: tuple[int, ...] | None

    @property
    def agrees(self) -> bool:
        return self.has_clique == self.gadget_answer


def validate_reduction(g: Graph, k: int, kind: str) -> ValidationResult:
    """Solve ``CLIQUE(g, k)`` and the gadget's constrained problem; report both answers.

    The ``J`` kinds ask for a ``(k+1)``-clique in the gadget.
    """
    if kind not in KINDS:
        raise ReductionError(f"unknown reduction kind {kind!r}; choose from {sorted(KINDS)}")
    gadget_kind, cons = KINDS[kind]
    if gadget_kind in ("J", "Jp"):
        if k < 3:
            raise ReductionError("the weighted reduction needs k >= 3")
        pruned = gadget_kind == "Jp"
        if (g.n if not pruned else sum(len(c) for c in _components(g) if len(c) > 2)) < 2:
            # nothing to build; only k-cliques with k <= 1 could exist
            gadget = None
        else:
            gadget = build_J(g, prune=pruned)
        target = k + 1
    else:
        gadget = BUILDERS[gadget_kind](g)
        target = k
    if gadget is None:
        witness = None
    else:
        witness = constrained_clique(gadget.graph, target, cons)
    return ValidationResult(kind, k, has_clique(g, k), witness is not None, witness)


def expansion_check(wg: VertexWeightedGraph) -> dict[tuple[int, int], tuple[int, int]]:
    """Closer counts of every ordered core pair, by explicit expansion and by weighted counting.

    The expansion is searched from core vertices only, so this stays cheap
    for gadgets with tens of thousands of leaves.
    """
    x = expand(wg)
    n = wg.core.n
    dist = [np.asarray(bfs_distances(x, s)) for s in range(n)]
    wm = WeightedMeasures(wg)
    return {(u, v): (int(np.count_nonzero(dist[u] < dist[v])), wm.n_closer(u, v))
            for u in range(n) for v in range(n) if u != v}
