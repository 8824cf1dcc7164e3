"""Simple undirected graphs, BFS distances and closer-vertex counts.

Vertices are the integers ``0..n-1``.  Edges are stored once, as ``(u, v)``
with ``u < v``, in sorted order, so two graphs built from the same edge set in
any order compare equal and serialize identically.

Distances between vertices in different components are ``UNREACHABLE``, a
large sentinel that behaves as +infinity under ``<`` comparisons.  With that
convention ``n_closer`` keeps its definition on disconnected inputs: a vertex
that reaches neither endpoint is a tie and counts for neither side.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

UNREACHABLE = 2**30


class GraphError(ValueError):
    """Malformed graph input (self-loop, bad vertex id, bad text format)."""


class DisconnectedGraphError(GraphError):
    """A distance-based quantity was requested on a disconnected graph."""


class DuplicateEdgeWarning(UserWarning):
    pass


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "edges", "adj", "cache", "_edge_set")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]):
        self.n = n
        self.edges = tuple(edges)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self._edge_set = frozenset(self.edges)
        # derived arrays (distances, closer counts) keyed by name
        self.cache: dict = {}

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=self.n)

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        if self.edges:
            e = np.asarray(self.edges)
            a[e[:, 0], e[:, 1]] = 1
            a[e[:, 1], e[:, 0]] = 1
        return a

    def distances(self) -> np.ndarray:
        """All-pairs distance matrix, computed once and cached (read-only)."""
        d = self.cache.get("dist")
        if d is None:
            d = all_pairs(self)
            d.setflags(write=False)
            self.cache["dist"] = d
        return d

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, normalizing each edge to ``(min, max)``.

    Duplicate edges (in either orientation) collapse to one, with a
    ``DuplicateEdgeWarning``.  Self-loops and ids outside ``0..n-1`` raise
    ``GraphError``.
    """
    if n < 0:
        raise GraphError(f"negative order {n}")
    seen: set[tuple[int, int]] = set()
    dups = 0
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            dups += 1
        seen.add(e)
    if dups:
        warnings.warn(f"{dups} duplicate edge(s) collapsed", DuplicateEdgeWarning, stacklevel=2)
    return Graph(n, sorted(seen))


def bfs_distances(g: Graph, source: int) -> list[int]:
    if not 0 <= source < g.n:
        raise GraphError(f"source {source} out of range for n={g.n}")
    dist = [UNREACHABLE] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        x = queue.popleft()
        dx = dist[x] + 1
        for y in adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dx
                queue.append(y)
    return dist


def all_pairs(g: Graph) -> np.ndarray:
    """Distance matrix as an int64 array with ``UNREACHABLE`` for no path."""
    n = g.n
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if g.m == 0:
        d = np.full((n, n), UNREACHABLE, dtype=np.int64)
        np.fill_diagonal(d, 0)
        return d
    e = np.asarray(g.edges)
    a = csr_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
    sp = shortest_path(a, method="D", directed=False, unweighted=True)
    d = np.full((n, n), UNREACHABLE, dtype=np.int64)
    finite = np.isfinite(sp)
    d[finite] = sp[finite].astype(np.int64)
    return d


def n_closer(g: Graph, u: int, v: int) -> int:
    """Number of vertices strictly closer to ``u`` than to ``v`` (``u`` included)."""
    if u == v:
        raise GraphError("n_closer needs two distinct vertices")
    d = g.distances()
    return int(np.count_nonzero(d[u] < d[v]))


def closer_matrix(d: np.ndarray) -> np.ndarray:
    """``N[u, v] = n_closer(u, v)`` for every ordered pair, from a distance matrix."""
    n = d.shape[0]
    out = np.empty((n, n), dtype=np.int64)
    for u in range(n):
        # rows of a symmetric matrix are its columns: d[x, u] == d[u, x]
        out[u] = np.count_nonzero(d[u][:, None] < d, axis=0)
    return out


def edge_vertex_distance(g: Graph, e: tuple[int, int], w: int) -> int:
    d = g.distances()
    return int(min(d[e[0], w], d[e[1], w]))


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return UNREACHABLE not in bfs_distances(g, 0)


def diameter(g: Graph) -> int:
    """Largest distance between two vertices of a connected graph."""
    if g.n == 0:
        return 0
    d = int(g.distances().max())
    if d >= UNREACHABLE:
        raise DisconnectedGraphError("diameter needs a connected graph")
    return d


def pendant_vertices(g: Graph) -> list[int]:
    return [v for v in range(g.n) if len(g.adj[v]) == 1]


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return build_graph(g.n, ((perm[u], perm[v]) for u, v in g.edges))


def disjoint_union(graphs: Sequence[Graph]) -> tuple[Graph, list[int]]:
    """Disjoint union plus the id offset of each part."""
    offsets, edges, total = [], [], 0
    for h in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in h.edges)
        total += h.n
    return build_graph(total, edges), offsets


# -- text format ------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"``.  Blank lines and ``#`` comments are ignored."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty graph file")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise GraphError(f"bad header line {lines[0]!r}, expected 'n m'") from None
    body = lines[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"bad edge line {ln!r}") from None
    return build_graph(n, edges)


def format_graph(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


# -- vertex-weighted graphs -------------------------------------------------

@dataclass(frozen=True)
class VertexWeightedGraph:
    """A core graph whose vertex ``z`` stands for itself plus ``w(z) - 1`` implicit leaves.

    Each implicit leaf hangs off its anchor ``z``.  When ``hub`` is set, every
    implicit leaf is also adjacent to the core vertex ``hub``, which is what a
    universal vertex added after the leaves produces.  With ``hub=None`` the
    leaves are ordinary pendant vertices.  Weights are Python ints and may be
    astronomically large; nothing here materializes the leaves.
    """

    core: Graph
    weights: tuple[int, ...]
    hub: int | None = None

    def __post_init__(self):
        if len(self.weights) != self.core.n:
            raise GraphError("one weight per core vertex required")
        if any(int(w) < 1 for w in self.weights):
            raise GraphError("weights must be positive integers")
        if self.hub is not None and not 0 <= self.hub < self.core.n:
            raise GraphError(f"hub {self.hub} is not a core vertex")

    def order(self) -> int:
        return sum(self.weights)

    def leaf_neighbors(self, z: int) -> tuple[int, ...]:
        """Core neighbours of an implicit leaf anchored at ``z``."""
        if self.hub is None or self.hub == z:
            return (z,)
        return (z, self.hub)

    def degree(self, v: int) -> int:
        d = self.core.degree(v) + self.weights[v] - 1
        if v == self.hub:
            d += sum(w - 1 for z, w in enumerate(self.weights) if z != v)
        return d


def representative_graph(wg: VertexWeightedGraph) -> tuple[Graph, list[int]]:
    """Core plus one leaf per anchor with ``w > 1``; returns the graph and each anchor's leaf id (or -1).

    Leaves of one anchor are interchangeable, so a single representative
    carries every shortest path they provide (a hub-joined leaf is a
    two-step shortcut between its anchor and the hub).
    """
    n = wg.core.n
    edges = list(wg.core.edges)
    rep = [-1] * n
    nxt = n
    for z, w in enumerate(wg.weights):
        if w > 1:
            rep[z] = nxt
            edges.extend((a, nxt) for a in wg.leaf_neighbors(z))
            nxt += 1
    return Graph(nxt, sorted(edges)), rep


def n_closer_weighted(wg: VertexWeightedGraph, u: int, v: int) -> int:
    """Weighted closer count between core vertices ``u`` and ``v``.

    Equals ``n_closer`` on the explicit expansion: every leaf anchored at
    ``z`` is as far from ``u`` and ``v`` as the representative leaf of ``z``.
    """
    if u == v:
        raise GraphError("n_closer_weighted needs two distinct vertices")
    g, rep = representative_graph(wg)
    d = g.distances()
    total = 0
    for z, w in enumerate(wg.weights):
        if d[z, u] < d[z, v]:
            total += 1
        if w > 1 and d[rep[z], u] < d[rep[z], v]:
            total += w - 1
    return total


def expand(wg: VertexWeightedGraph) -> Graph:
    """Explicit graph: core ids first, then the leaves of each anchor in id order."""
    edges = list(wg.core.edges)
    nxt = wg.core.n
    for z, w in enumerate(wg.weights):
        for _ in range(w - 1):
            for a in wg.leaf_neighbors(z):
                edges.append((a, nxt))
            nxt += 1
    return Graph(nxt, sorted((min(a, b), max(a, b)) for a, b in edges))
