"""Distance-based centrality and peripherality measures.

Every measure here is built on one matrix, ``N[u, v] = n_closer(u, v)``,
computed once per graph and cached on it.  Writing ``P[x, u]`` for
"``x`` beats ``u``" (``N[x, u] > N[u, x]``):

* ``Mo(e)`` for ``e = uv`` is ``|N[u, v] - N[v, u]|``.
* ``peri(v)`` counts the ``x`` with ``P[x, v]``.
* ``spr(v)`` is the column sum of ``N`` at ``v``.
* ``eperi(uv)`` counts the ``x`` with ``P[x, u]`` and ``P[x, v]``.
* ``espr(uv)`` sums ``N[x, u] + N[x, v]`` over ``x`` outside the edge.

Half-integral per-vertex Mostar values are returned as ``Fraction``.
Closeness and betweenness are exact ``Fraction`` values, and eigenvector
centrality is a float from power iteration.
"""

from __future__ import annotations

import csv
import io
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable

import numpy as np

from .graph_core import UNREACHABLE, DisconnectedGraphError, Graph, closer_matrix

Edge = tuple[int, int]


@dataclass(frozen=True)
class Measure:
    """A graph-level total together with its per-vertex or per-edge values."""

    total: Any
    values: dict[Hashable, Any] = field(default_factory=dict)


# -- shared matrices -------------------------------------------------------

def closer(g: Graph) -> np.ndarray:
    N = g.cache.get("closer")
    if N is None:
        N = closer_matrix(g.distances())
        N.setflags(write=False)
        g.cache["closer"] = N
    return N


def _beats(g: Graph) -> np.ndarray:
    P = g.cache.get("beats")
    if P is None:
        N = closer(g)
        P = N > N.T
        g.cache["beats"] = P
    return P


def _edge_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    if not g.edges:
        z = np.zeros(0, dtype=np.int64)
        return z, z
    e = np.asarray(g.edges, dtype=np.int64)
    return e[:, 0], e[:, 1]


def _edge_map(g: Graph, vals: np.ndarray) -> dict[Edge, int]:
    return {e: int(x) for e, x in zip(g.edges, vals)}


def _require_connected(g: Graph, what: str) -> np.ndarray:
    d = g.distances()
    if g.n and d.max() >= UNREACHABLE:
        raise DisconnectedGraphError(f"{what} needs a connected graph")
    return d


# -- Mostar family ----------------------------------------------------------

def mostar(g: Graph) -> Measure:
    N = closer(g)
    us, vs = _edge_arrays(g)
    mo = np.abs(N[us, vs] - N[vs, us])
    return Measure(int(mo.sum()), _edge_map(g, mo))


def mostar_vertex(g: Graph) -> dict[int, Fraction]:
    """Half the sum of ``Mo(e)`` over the edges at each vertex."""
    acc = [0] * g.n
    for (u, v), x in mostar(g).values.items():
        acc[u] += x
        acc[v] += x
    return {v: Fraction(acc[v], 2) for v in range(g.n)}


def total_mostar(g: Graph) -> Measure:
    """``Mo*``: the Mostar contribution summed over all unordered vertex pairs."""
    N = closer(g)
    A = np.abs(N - N.T)
    col = A.sum(axis=0)
    per_vertex = {v: Fraction(int(col[v]), 2) for v in range(g.n)}
    return Measure(int(A.sum()) // 2, per_vertex)


def terminal_mostar(g: Graph) -> Measure:
    """``Mo`` with closer counts restricted to degree-one vertices."""
    d = g.distances()
    leaves = [v for v in range(g.n) if len(g.adj[v]) == 1]
    us, vs = _edge_arrays(g)
    if not leaves or len(us) == 0:
        return Measure(0, {e: 0 for e in g.edges})
    dl = d[leaves]
    lu = np.count_nonzero(dl[:, us] < dl[:, vs], axis=0)
    lv = np.count_nonzero(dl[:, vs] < dl[:, us], axis=0)
    mo = np.abs(lu - lv)
    return Measure(int(mo.sum()), _edge_map(g, mo))


def irregularity(g: Graph) -> Measure:
    deg = g.degrees()
    us, vs = _edge_arrays(g)
    irr = np.abs(deg[us] - deg[vs])
    return Measure(int(irr.sum()), _edge_map(g, irr))


# -- peripherality ----------------------------------------------------------

def peripherality(g: Graph) -> Measure:
    col = _beats(g).sum(axis=0)
    vals = {v: int(col[v]) for v in range(g.n)}
    return Measure(sum(vals.values()), vals)


def sum_peripherality(g: Graph) -> Measure:
    col = closer(g).sum(axis=0)
    vals = {v: int(col[v]) for v in range(g.n)}
    return Measure(sum(vals.values()), vals)


def edge_peripherality(g: Graph) -> Measure:
    P = _beats(g)
    us, vs = _edge_arrays(g)
    ep = np.count_nonzero(P[:, us] & P[:, vs], axis=0)
    return Measure(int(ep.sum()), _edge_map(g, ep))


def edge_sum_peripherality(g: Graph) -> Measure:
    N = closer(g)
    col = N.sum(axis=0)
    us, vs = _edge_arrays(g)
    # N[u, u] = 0, so only the cross terms have to be removed
    es = col[us] + col[vs] - N[vs, us] - N[us, vs]
    return Measure(int(es.sum()), _edge_map(g, es))


# -- edge centralities ------------------------------------------------------

def edge_degree(g: Graph) -> dict[Edge, int]:
    adj = [set(a) for a in g.adj]
    return {(u, v): len(adj[u] | adj[v]) - 2 for u, v in g.edges}


def edge_eccentricity(g: Graph) -> dict[Edge, int]:
    d = _require_connected(g, "edge eccentricity")
    us, vs = _edge_arrays(g)
    ee = np.minimum(d[us], d[vs]).max(axis=1) if len(us) else np.zeros(0)
    return _edge_map(g, ee)


# -- classical vertex centralities -----------------------------------------

def eccentricity(g: Graph) -> dict[int, int]:
    d = _require_connected(g, "eccentricity")
    ecc = d.max(axis=1) if g.n else np.zeros(0)
    return {v: int(ecc[v]) for v in range(g.n)}


def closeness(g: Graph) -> dict[int, Fraction]:
    d = _require_connected(g, "closeness")
    s = d.sum(axis=1)
    return {v: Fraction(1, int(s[v])) if s[v] else Fraction(0) for v in range(g.n)}


def betweenness(g: Graph) -> dict[int, Fraction]:
    """Unnormalized betweenness over unordered pairs, accumulated exactly.

    Brandes' dependency accumulation with integer path counts and rational
    dependencies.  Each unordered pair is visited from both ends, hence the
    final halving.
    """
    n = g.n
    adj = g.adj
    bc = [Fraction(0)] * n
    for s in range(n):
        dist = [-1] * n
        sigma = [0] * n
        preds: list[list[int]] = [[] for _ in range(n)]
        dist[s], sigma[s] = 0, 1
        order = []
        queue = deque([s])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
                if dist[y] == dist[x] + 1:
                    sigma[y] += sigma[x]
                    preds[y].append(x)
        delta = [Fraction(0)] * n
        for w in reversed(order):
            coeff = (1 + delta[w]) / sigma[w]
            for x in preds[w]:
                delta[x] += sigma[x] * coeff
            if w != s:
                bc[w] += delta[w]
    return {v: bc[v] / 2 for v in range(n)}


EC_TOL = 1e-12
EC_MAX_ITER = 100_000


def eigenvector_centrality(g: Graph, tol: float = EC_TOL, max_iter: int = EC_MAX_ITER) -> dict[int, float]:
    """Dominant adjacency eigenvector, unit 2-norm, by power iteration.

    Iterates with ``A + I`` rather than ``A``: same eigenvectors, but the
    dominant eigenvalue becomes strictly largest in modulus, so bipartite
    graphs converge instead of oscillating.  Starts from the all-ones vector
    and stops when successive iterates differ by less than ``tol`` in 2-norm.
    """
    n = g.n
    if n == 0:
        return {}
    a = g.adjacency_matrix().astype(float)
    a[np.diag_indices(n)] += 1.0
    x = np.ones(n) / np.sqrt(n)
    for _ in range(max_iter):
        y = a @ x
        y /= np.linalg.norm(y)
        if np.linalg.norm(y - x) < tol:
            x = y
            break
        x = y
    else:
        raise RuntimeError(f"power iteration did not converge in {max_iter} steps")
    return {v: float(x[v]) for v in range(n)}


def classical_centralities(g: Graph) -> dict[str, dict[int, Any]]:
    return {
        "deg": {v: g.degree(v) for v in range(g.n)},
        "cc": closeness(g),
        "bc": betweenness(g),
        "ec": eigenvector_centrality(g),
        "ecc": eccentricity(g),
    }


# -- report -----------------------------------------------------------------

VERTEX_FIELDS = ("deg", "ecc", "cc", "bc", "ec", "Mo", "Mo_total", "peri", "spr")
EDGE_FIELDS = ("Mo", "Mo_terminal", "irr", "edeg", "eecc", "eperi", "espr")
GRAPH_FIELDS = ("n", "m", "Mo", "Mo_terminal", "Mo_total", "irr", "peri", "spr", "eperi", "espr")


def edge_key(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def format_number(x: Any) -> Any:
    """JSON-ready value: ints stay ints, halves print exactly, other reals get 12 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        if x.denominator == 2:
            return float(x)
        return float(format(float(x), ".12g"))
    if isinstance(x, float):
        return float(format(x, ".12g"))
    return x


@dataclass
class MeasureReport:
    n: int
    m: int
    graph: dict[str, Any]
    vertices: dict[int, dict[str, Any]]
    edges: dict[Edge, dict[str, Any]]

    def to_dict(self) -> dict[str, Any]:
        return {
            "graph": {k: format_number(v) for k, v in self.graph.items()},
            "vertices": {str(v): {k: format_number(x) for k, x in row.items()} for v, row in self.vertices.items()},
            "edges": {edge_key(e): {k: format_number(x) for k, x in row.items()} for e, row in self.edges.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        cols = ["kind", "id"] + list(VERTEX_FIELDS) + [f for f in EDGE_FIELDS if f not in VERTEX_FIELDS]
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for v, row in self.vertices.items():
            w.writerow(["vertex", v] + [_cell(row.get(c)) for c in cols[2:]])
        for e, row in self.edges.items():
            w.writerow(["edge", edge_key(e)] + [_cell(row.get(c)) for c in cols[2:]])
        return buf.getvalue()


def _cell(x: Any) -> str:
    if x is None:
        return ""
    x = format_number(x)
    if isinstance(x, float):
        return format(x, ".12g")
    return str(x)


def measure_report(g: Graph) -> MeasureReport:
    """Every vertex and edge measure of a connected graph, plus the graph totals."""
    _require_connected(g, "a measure report")
    mo, mot, mostar_total = mostar(g), terminal_mostar(g), total_mostar(g)
    irr, peri, spr = irregularity(g), peripherality(g), sum_peripherality(g)
    eperi, espr = edge_peripherality(g), edge_sum_peripherality(g)
    edeg, eecc = edge_degree(g), edge_eccentricity(g)
    cent = classical_centralities(g)
    mo_v = mostar_vertex(g)
    vertices = {
        v: {
            "deg": cent["deg"][v], "ecc": cent["ecc"][v], "cc": cent["cc"][v],
            "bc": cent["bc"][v], "ec": cent["ec"][v], "Mo": mo_v[v],
            "Mo_total": mostar_total.values[v], "peri": peri.values[v], "spr": spr.values[v],
        }
        for v in range(g.n)
    }
    edges = {
        e: {
            "Mo": mo.values[e], "Mo_terminal": mot.values[e], "irr": irr.values[e],
            "edeg": edeg[e], "eecc": eecc[e], "eperi": eperi.values[e], "espr": espr.values[e],
        }
        for e in g.edges
    }
    graph = {
        "n": g.n, "m": g.m, "Mo": mo.total, "Mo_terminal": mot.total, "Mo_total": mostar_total.total,
        "irr": irr.total, "peri": peri.total, "spr": spr.total, "eperi": eperi.total, "espr": espr.total,
    }
    return MeasureReport(g.n, g.m, graph, vertices, edges)


# -- scalar lookup by name --------------------------------------------------

def graph_measure(g: Graph, name: str) -> int:
    """Graph-level value of a measure by its short name."""
    fn = SCALAR_MEASURES.get(name)
    if fn is None:
        raise KeyError(f"unknown measure {name!r}; choose from {sorted(SCALAR_MEASURES)}")
    return fn(g).total


SCALAR_MEASURES = {
    "Mo": mostar,
    "Mo_terminal": terminal_mostar,
    "Mo_total": total_mostar,
    "irr": irregularity,
    "peri": peripherality,
    "spr": sum_peripherality,
    "eperi": edge_peripherality,
    "espr": edge_sum_peripherality,
}
