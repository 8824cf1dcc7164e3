"""Exhaustive generation of free trees and connected labeled graphs.

Free trees come out as canonical level sequences: the depth of each vertex in
a preorder walk of the tree rooted at a centre, with subtrees in
non-increasing order.  Each unlabeled tree appears exactly once.  The
successor rule is stateless (it reads only the current sequence), so any
sequence doubles as a resumable cursor for long runs.

Prüfer decoding plus a centre-rooted canonical string gives an independent
route to the same set of trees for small orders.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Sequence

from .graph_core import Graph


# -- level sequences --------------------------------------------------------

def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Next rooted canonical sequence in decreasing order, or None after the star."""
    if p is None:
        p = len(seq) - 1
        while seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: Sequence[int]) -> tuple[list[int], list[int]]:
    """First subtree of the root (re-rooted at depth 0) and the remainder."""
    second = next((i for i in range(2, len(seq)) if seq[i] == 1), len(seq))
    left = [x - 1 for x in seq[1:second]]
    rest = [0] + list(seq[second:])
    return left, rest


def _next_free(seq: list[int]) -> list[int] | None:
    """Smallest-step move to a sequence whose root is a canonical centre."""
    left, rest = _split(seq)
    hl, hr = max(left), max(rest)
    ok = hr >= hl
    if ok and hr == hl:
        # two centres: the first subtree may not outweigh the rest
        ok = len(left) < len(rest) or (len(left) == len(rest) and left <= rest)
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    if nxt is None:
        return None
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[len(nxt) - len(tail):] = tail
    return nxt


def first_level_sequence(n: int) -> list[int]:
    """The path, rooted at a centre: the largest canonical sequence of order ``n``."""
    return list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))


def free_tree_sequences(n: int, start: list[int] | None = None) -> Iterator[list[int]]:
    """Canonical level sequences of all free trees of order ``n``.

    ``start`` resumes from a sequence previously yielded (that sequence is
    yielded again).
    """
    if n < 1:
        return
    if n <= 2:
        if start is None:
            yield list(range(n))
        return
    seq: list[int] | None = list(start) if start is not None else first_level_sequence(n)
    while seq is not None:
        seq = _next_free(seq)
        if seq is None:
            return
        yield seq
        seq = _next_rooted(seq)


def parents(seq: Sequence[int]) -> list[int]:
    """Parent index of every vertex (``-1`` for the root)."""
    par = [-1] * len(seq)
    last_at = {}
    for i, d in enumerate(seq):
        if d:
            par[i] = last_at[d - 1]
        last_at[d] = i
    return par


def tree_edges(seq: Sequence[int]) -> list[tuple[int, int]]:
    return [(p, i) for i, p in enumerate(parents(seq)) if p >= 0]


def tree_from_sequence(seq: Sequence[int]) -> Graph:
    return Graph(len(seq), sorted(tree_edges(seq)))


def enumerate_free_trees(n: int) -> Iterator[Graph]:
    """Every unlabeled tree of order ``n`` once, in its canonical labeling."""
    if n > 24:
        raise ValueError("free-tree enumeration is capped at n = 24")
    for seq in free_tree_sequences(n):
        yield tree_from_sequence(seq)


def tree_mo_irr(seq: Sequence[int]) -> tuple[int, int]:
    """``(Mo, irr)`` of a tree straight from its level sequence.

    In a tree the edge to a subtree of size ``s`` splits the vertices into
    ``s`` and ``n - s`` closer ones, so ``Mo(e) = |n - 2s|``.
    """
    n = len(seq)
    par = parents(seq)
    size = [1] * n
    deg = [0] * n
    for i in range(n - 1, 0, -1):
        p = par[i]
        size[p] += size[i]
        deg[p] += 1
        deg[i] += 1
    mo = irr = 0
    for i in range(1, n):
        mo += abs(n - 2 * size[i])
        irr += abs(deg[i] - deg[par[i]])
    return mo, irr


# -- independent route: Prüfer codes and canonical strings -----------------

def prufer_decode(code: Sequence[int], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for x in code:
        degree[x] += 1
    edges = []
    for x in code:
        leaf = next(v for v in range(n) if degree[v] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = (w for w in range(n) if degree[w] == 1)
    edges.append((u, v))
    return edges


def tree_centers(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    if n <= 2:
        return list(range(n))
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    left = n
    while left > 2:
        left -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return layer


def canonical_string(n: int, edges: Sequence[tuple[int, int]]) -> str:
    """Isomorphism-invariant encoding of a tree (nested parentheses at a centre)."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)

    def enc(v: int, parent: int) -> str:
        return "(" + "".join(sorted(enc(w, v) for w in adj[v] if w != parent)) + ")"

    return min(enc(c, -1) for c in tree_centers(n, adj))


def free_trees_by_prufer(n: int) -> dict[str, list[tuple[int, int]]]:
    """Canonical string to one labeled representative, over all ``n^(n-2)`` labeled trees."""
    if n == 1:
        return {"()": []}
    if n == 2:
        return {"(())": [(0, 1)]}
    out: dict[str, list[tuple[int, int]]] = {}
    for code in itertools.product(range(n), repeat=n - 2):
        edges = prufer_decode(code, n)
        out.setdefault(canonical_string(n, edges), edges)
    return out


# -- connected labeled graphs ----------------------------------------------

def enumerate_connected_graphs(n: int) -> Iterator[Graph]:
    """Every connected labeled graph on ``0..n-1`` (edge subsets in bitmask order)."""
    if n > 7:
        raise ValueError("labeled graph enumeration is capped at n = 7")
    pairs = list(itertools.combinations(range(n), 2))
    full = (1 << n) - 1
    for mask in range(1 << len(pairs)):
        nb = [0] * n
        chosen = []
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                nb[u] |= 1 << v
                nb[v] |= 1 << u
                chosen.append((u, v))
        seen = frontier = 1 if n else 0
        while frontier:
            reach = 0
            f = frontier
            while f:
                low = f & -f
                reach |= nb[low.bit_length() - 1]
                f ^= low
            frontier = reach & ~seen
            seen |= reach
        if seen == full or n == 0:
            yield Graph(n, chosen)
