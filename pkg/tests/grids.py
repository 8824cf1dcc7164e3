"""Parameter grids and seeded graph samplers shared by the test modules."""

from __future__ import annotations

import itertools
import random

from peripherality.families import FamilyError, FamilySpec, factorial_tree_size, generate, spec
from peripherality.graph_core import Graph
from peripherality.trees import prufer_decode


def _legs(max_order: int) -> list[tuple[int, ...]]:
    out = []
    for k in range(1, 5):
        for legs in itertools.combinations_with_replacement(range(1, 7), k):
            if 1 + sum(legs) <= max_order:
                out.append(tuple(sorted(legs, reverse=True)))
    return out


def family_grid() -> list[FamilySpec]:
    """Every family member used by the closed-form suite (orders up to 400)."""
    specs = []
    specs += [spec("path", n) for n in [*range(1, 41), 99, 100, 199, 200, 400]]
    specs += [spec("cycle", n) for n in [*range(3, 41), 101, 200, 399, 400]]
    specs += [spec("complete", n) for n in [*range(1, 31), 60, 100]]
    specs += [spec("complete-bipartite", a, b) for a in range(1, 13) for b in range(1, 13)]
    specs += [spec("complete-bipartite", a, b) for a, b in [(10, 30), (50, 50), (100, 300)]]
    specs += [spec("star", k) for k in [*range(1, 41), 100, 399]]
    specs += [spec("spider", legs) for legs in _legs(14)]
    specs += [spec("balanced-spider", a, b) for a in range(1, 9) for b in range(1, 9)]
    specs += [spec("balanced-spider", a, b) for a, b in [(3, 40), (20, 19), (40, 3), (9, 44)]]
    specs += [spec("factorial-tree", m) for m in range(1, 6) if factorial_tree_size(m)[0] <= 400]
    specs += [spec("full-mary-tree", m, d) for m in range(2, 6) for d in range(1, 6)
              if (m ** (d + 1) - 1) // (m - 1) <= 400]
    specs += [spec("peri-max-spider", n) for n in [*range(4, 41), 100, 399]]
    specs += [spec("five-layer", n) for n in range(1, 41)]
    specs += [spec("broom", a, b) for a in range(1, 13) for b in range(1, 13)]
    out = []
    for fs in specs:
        try:
            g = generate(fs)
        except FamilyError:
            continue
        if g.n <= 400:
            out.append(fs)
    return out


def random_connected(rng: random.Random, n: int, p: float | None = None) -> Graph:
    """Random spanning tree plus independent extra edges; always connected."""
    if n == 1:
        return Graph(1, [])
    edges = set(random_tree_edges(rng, n))
    p = rng.random() if p is None else p
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


def random_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    if n == 1:
        return []
    if n == 2:
        return [(0, 1)]
    return prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph(n, sorted(random_tree_edges(rng, n)))
