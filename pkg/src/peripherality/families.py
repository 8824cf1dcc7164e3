"""Named graph families, their vertex numbering and exact closed-form values.

Numbering conventions, relied on by the closed forms and by callers:

* paths are ``0..n-1`` in order and cycles follow the same order;
* complete bipartite ``K_{m,n}`` puts the ``m`` side first;
* stars, spiders and brooms have centre ``0``.  Spider legs follow in the
  order given, each listed from the centre outwards;
* rooted trees (factorial, full m-ary) are numbered breadth first from the root.

``closed_form`` returns ``NotCovered`` when a family/measure pair has no
known formula.  It never falls back on computing the value.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod
from typing import Any, Callable

from . import measures as M
from .graph_core import Graph, GraphError, build_graph, disjoint_union


class FamilyError(ValueError):
    """Parameters outside a family's domain."""


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple

    def __str__(self) -> str:
        parts = [self.tag]
        for p in self.params:
            if isinstance(p, tuple) and all(isinstance(x, int) for x in p):
                parts.append(",".join(map(str, p)))
            elif isinstance(p, tuple):
                parts.append("[" + "; ".join(str(x) for x in p) + "]")
            else:
                parts.append(str(p))
        return " ".join(parts)


@dataclass(frozen=True)
class ClosedForm:
    value: Any
    formula: str


@dataclass(frozen=True)
class NotCovered:
    reason: str


# -- generators -------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(m: int, n: int) -> Graph:
    _need(m >= 1 and n >= 1, "complete bipartite needs both sides non-empty")
    return build_graph(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def star(k: int) -> Graph:
    """``K_{1,k}``: centre 0 and ``k`` leaves."""
    _need(k >= 1, "star needs at least one leaf")
    return build_graph(k + 1, [(0, i) for i in range(1, k + 1)])


def spider_legs(legs: tuple[int, ...]) -> list[list[int]]:
    """Vertex ids along each leg, centre excluded, innermost first."""
    out, nxt = [], 1
    for ln in legs:
        out.append(list(range(nxt, nxt + ln)))
        nxt += ln
    return out


def spider(legs: tuple[int, ...]) -> Graph:
    _need(len(legs) >= 1 and all(x >= 1 for x in legs), "spider legs must be positive")
    edges = []
    for leg in spider_legs(legs):
        edges.extend(zip([0] + leg[:-1], leg))
    return build_graph(1 + sum(legs), edges)


def balanced_spider(a: int, b: int) -> Graph:
    _need(a >= 1 and b >= 1, "balanced spider needs a, b >= 1")
    return spider((b,) * a)


def k_thick_spider(a: int, b: int, k: int) -> Graph:
    """Balanced spider plus an edge between same-leg vertices at distance at most ``k``."""
    _need(a >= 1 and b >= 1 and k >= 1, "k-thick spider needs a, b, k >= 1")
    edges = list(balanced_spider(a, b).edges)
    for leg in spider_legs((b,) * a):
        for i, j in itertools.combinations(range(b), 2):
            if j - i <= k:
                edges.append((leg[i], leg[j]))
    return build_graph(1 + a * b, set(edges))


def _rooted_tree(children_at_depth: Callable[[int], int], depth: int) -> Graph:
    """Breadth-first tree where every depth-``i`` vertex has ``children_at_depth(i)`` children."""
    edges, level, nxt = [], [0], 1
    for i in range(depth):
        new = []
        for v in level:
            for _ in range(children_at_depth(i)):
                edges.append((v, nxt))
                new.append(nxt)
                nxt += 1
        level = new
    return build_graph(nxt, edges)


def factorial_tree(m: int) -> Graph:
    """Root of degree ``m``; a vertex at depth ``i`` has degree ``m - i``; depth ``m - 1``."""
    _need(m >= 2, "factorial tree needs m >= 2")
    return _rooted_tree(lambda i: m if i == 0 else m - i - 1, m - 1)


def full_mary_tree(m: int, d: int) -> Graph:
    _need(m >= 2 and d >= 1, "full m-ary tree needs m >= 2, d >= 1")
    return _rooted_tree(lambda i: m, d)


def clique_star(m: int, n: int) -> Graph:
    """``n`` disjoint ``K_m`` blocks, every block vertex joined to centre 0."""
    _need(m >= 1 and n >= 1, "clique star needs m, n >= 1")
    edges = []
    for j in range(n):
        block = range(1 + j * m, 1 + (j + 1) * m)
        edges.extend((0, v) for v in block)
        edges.extend(itertools.combinations(block, 2))
    return build_graph(1 + m * n, edges)


def clique_spider(a: int, b: int, m: int) -> Graph:
    """Balanced spider ``S_{a,b}`` whose leaves become ``K_m`` blocks joined to the leaf's neighbour.

    Ids: centre 0, then each leg's ``b - 1`` inner vertices, then the blocks
    leg by leg.
    """
    _need(a >= 1 and b >= 1 and m >= 1, "clique spider needs a, b, m >= 1")
    edges, nxt, anchors = [], 1, []
    for _ in range(a):
        prev = 0
        for _ in range(b - 1):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
        anchors.append(prev)
    for anchor in anchors:
        block = range(nxt, nxt + m)
        edges.extend((anchor, v) for v in block)
        edges.extend(itertools.combinations(block, 2))
        nxt += m
    return build_graph(nxt, edges)


def clique_spider_leaf_blocks(a: int, b: int, m: int) -> list[list[int]]:
    start = 1 + a * (b - 1)
    return [list(range(start + i * m, start + (i + 1) * m)) for i in range(a)]


def universal_join(parts: tuple[Graph, ...]) -> Graph:
    """Disjoint union of ``parts`` plus a universal vertex, which gets id 0."""
    _need(len(parts) >= 1, "universal join needs at least one part")
    from .measures import mostar

    for h in parts:
        if mostar(h).total != 0:
            raise FamilyError("universal join parts must all have Mostar index 0")
    union, _ = disjoint_union(parts)
    edges = [(u + 1, v + 1) for u, v in union.edges] + [(0, v) for v in range(1, union.n + 1)]
    return build_graph(union.n + 1, edges)


def five_layer(n: int) -> Graph:
    """Layers ``V_1..V_5`` of size ``n`` (ids ``i*n .. i*n+n-1``), complete bipartite between neighbours."""
    _need(n >= 1, "five-layer graph needs n >= 1")
    edges = []
    for i in range(4):
        edges.extend((i * n + x, (i + 1) * n + y) for x in range(n) for y in range(n))
    return build_graph(5 * n, edges)


def peri_max_legs(n: int) -> tuple[int, int, int]:
    _need(n >= 10, "the three-leg peripherality maximizer is defined for n >= 10")
    k, r = divmod(n - 1, 3)
    if r == 0:
        return (k - 1, k, k + 1)
    if r == 1:
        return (k - 1, k, k + 2)
    return (k - 1, k + 1, k + 2)


def peri_max_spider(n: int) -> Graph:
    return spider(peri_max_legs(n))


def broom(a: int, b: int) -> Graph:
    """Star ``K_{1,a}`` (centre 0, leaves ``1..a``) plus a leg ``v_1..v_b`` with ``v_i = a + i``."""
    _need(a >= 1 and b >= 1, "broom needs a, b >= 1")
    return spider((1,) * a + (b,))


def broom_leg_vertex(a: int, i: int) -> int:
    """Id of ``v_i`` on a broom's long leg; ``v_0`` is the centre."""
    return 0 if i == 0 else a + i


def two_star_bridge(m: int, n: int) -> Graph:
    """Stars ``K_{1,m-1}`` (centre 0) and ``K_{1,n-1}`` (centre ``m``) with their centres joined."""
    _need(m >= 1 and n >= 1, "two-star bridge needs m, n >= 1")
    edges = [(0, i) for i in range(1, m)] + [(m, m + j) for j in range(1, n)] + [(0, m)]
    return build_graph(m + n, edges)


def overlap_star(m: int, n: int) -> Graph:
    """``K_{1,m-1}`` (centre 0, leaves ``1..m-1``) plus vertex ``m`` joined to 0 and to leaves ``1..n-1``."""
    _need(1 <= n <= m, "overlap star needs 1 <= n <= m")
    edges = [(0, i) for i in range(1, m)] + [(0, m)] + [(m, i) for i in range(1, n)]
    return build_graph(m + 1, edges)


# -- spec parsing -------------------------------------------------------------

GENERATORS: dict[str, Callable[..., Graph]] = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete-bipartite": complete_bipartite,
    "star": star,
    "spider": spider,
    "balanced-spider": balanced_spider,
    "k-thick-spider": k_thick_spider,
    "factorial-tree": factorial_tree,
    "full-mary-tree": full_mary_tree,
    "clique-star": clique_star,
    "clique-spider": clique_spider,
    "universal-join": universal_join,
    "five-layer": five_layer,
    "peri-max-spider": peri_max_spider,
    "broom": broom,
    "two-star-bridge": two_star_bridge,
    "overlap-star": overlap_star,
}

ARITY = {
    "path": 1, "cycle": 1, "complete": 1, "complete-bipartite": 2, "star": 1,
    "balanced-spider": 2, "k-thick-spider": 3, "factorial-tree": 1, "full-mary-tree": 2,
    "clique-star": 2, "clique-spider": 3, "five-layer": 1, "peri-max-spider": 1,
    "broom": 2, "two-star-bridge": 2, "overlap-star": 2,
}


def parse_spec(tokens: list[str]) -> FamilySpec:
    """``["balanced-spider", "3", "4"]`` style tokens to a ``FamilySpec``.

    ``spider`` takes its legs as one comma list (``spider 1,2,3``) or as
    separate integers.  ``universal-join`` takes parts written as
    ``tag:p1:p2`` (``universal-join cycle:4 complete:3``).
    """
    if not tokens:
        raise FamilyError("missing family tag")
    tag, args = tokens[0], tokens[1:]
    if tag not in GENERATORS:
        raise FamilyError(f"unknown family {tag!r}; choose from {sorted(GENERATORS)}")
    try:
        if tag == "spider":
            legs = tuple(int(x) for a in args for x in a.split(",") if x)
            return FamilySpec(tag, (legs,))
        if tag == "universal-join":
            parts = tuple(parse_spec(a.split(":")) for a in args)
            return FamilySpec(tag, (parts,))
        vals = tuple(int(a) for a in args)
    except ValueError as exc:
        raise FamilyError(f"bad parameters for {tag}: {args}") from exc
    if len(vals) != ARITY[tag]:
        raise FamilyError(f"{tag} takes {ARITY[tag]} integer parameter(s), got {len(vals)}")
    return FamilySpec(tag, vals)


def generate(spec: FamilySpec) -> Graph:
    if spec.tag == "universal-join":
        return universal_join(tuple(generate(p) for p in spec.params[0]))
    try:
        return GENERATORS[spec.tag](*spec.params)
    except KeyError:
        raise FamilyError(f"unknown family {spec.tag!r}") from None
    except GraphError as exc:
        raise FamilyError(str(exc)) from exc


def spec(tag: str, *params) -> FamilySpec:
    return FamilySpec(tag, tuple(params))


# -- closed forms -----------------------------------------------------------

def _exact(x: Fraction | int) -> int | Fraction:
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _path_center_distance(n: int, v: int) -> int:
    """Distance to the nearer centre vertex (two centres when ``n`` is even)."""
    if n % 2:
        return abs(v - n // 2)
    return min(abs(v - (n // 2 - 1)), abs(v - n // 2))


def _path(n: int, measure: str):
    half_cube = Fraction(n * n * (n - 1), 2)
    even = n % 2 == 0
    if measure == "Mo":
        return ClosedForm((n - 1) ** 2 // 2, "floor((n-1)^2/2)")
    if measure == "irr":
        if n >= 3:
            return ClosedForm(2, "2 for n >= 3")
        return ClosedForm(0, "0 for n <= 2")
    if measure == "Mo_terminal" and n >= 2:
        return ClosedForm(0, "0: one leaf on each side of every edge")
    if measure == "peri" and n >= 3:
        if even:
            return ClosedForm(n * (n - 2) // 2, "n(n-2)/2, n even")
        return ClosedForm((n - 1) ** 2 // 2, "(n-1)^2/2, n odd")
    if measure == "peri_vertex" and n >= 3:
        vals = {}
        for v in range(n):
            i = _path_center_distance(n, v)
            vals[v] = 2 * i if even else (0 if i == 0 else 2 * i - 1)
        return ClosedForm(vals, "2i (n even) or 2i-1, 0 at the centre (n odd); i = distance to nearer centre")
    if measure == "spr":
        if even:
            return ClosedForm(_exact(half_cube - Fraction(n, 2) * (Fraction(n, 2) - 1)), "n^2(n-1)/2 - (n/2)(n/2-1), n even")
        return ClosedForm(_exact(half_cube - Fraction((n - 1) ** 2, 4)), "n^2(n-1)/2 - (n-1)^2/4, n odd")
    if measure == "spr_vertex":
        vals = {}
        for v in range(n):
            i = v + 1  # one-based position along the path
            base = Fraction(3, 2) * i * i - Fraction(3, 2) * (1 + n) * i
            if even:
                x = base + 1 + Fraction(3 * n * n, 4)
            elif i % 2 == 0:
                x = base + 1 + Fraction(3 * n * n + 1, 4)
            else:
                x = base + Fraction(3, 4) + Fraction(3 * n * n, 4)
            vals[v] = _exact(x)
        return ClosedForm(vals, "3/2 i^2 - 3/2 (1+n) i + const(n, parity of i), i one-based")
    if measure == "eperi" and n >= 3:
        if even:
            return ClosedForm((n - 2) * (n - 4) // 2, "(n-2)(n-4)/2, n even")
        return ClosedForm((n - 3) ** 2 // 2, "(n-3)^2/2, n odd")
    if measure == "eperi_edge" and n >= 3:
        vals = {}
        for v in range(n - 1):
            i = min(_path_center_distance(n, v), _path_center_distance(n, v + 1))
            vals[(v, v + 1)] = 2 * i if even else (0 if i == 0 else 2 * i - 1)
        return ClosedForm(vals, "2i (n even) or 2i-1, 0 at the centre (n odd); i = edge distance to centre")
    if measure == "Mo_total" and n % 2 == 1 and n >= 5:
        return _balanced_spider(2, (n - 1) // 2, "Mo_total")
    return None


def _cycle(n: int, measure: str):
    if measure in ("Mo", "Mo_total", "irr", "peri", "eperi", "Mo_terminal"):
        return ClosedForm(0, "0 by vertex- and edge-transitivity")
    if measure == "spr":
        h = Fraction(n * n * (n - 1), 2)
        if n % 2 == 0:
            return ClosedForm(_exact(h - Fraction(n * (n - 2), 2)), "n^2(n-1)/2 - n(n-2)/2, n even")
        return ClosedForm(_exact(h - Fraction(n * (n - 1), 2)), "n^2(n-1)/2 - n(n-1)/2, n odd")
    return None


def _complete(n: int, measure: str):
    if measure in ("Mo", "Mo_total", "irr", "peri", "eperi"):
        return ClosedForm(0, "0 by symmetry")
    if measure == "Mo_terminal" and n >= 2:
        return ClosedForm(0, "0 by symmetry")
    if measure == "spr":
        return ClosedForm(n * n - n, "n^2 - n")
    if measure == "spr_vertex":
        return ClosedForm({v: n - 1 for v in range(n)}, "n - 1")
    if measure == "espr":
        return ClosedForm(n * (n - 1) * (n - 2), "n(n-1)(n-2)")
    if measure == "espr_edge":
        return ClosedForm({e: 2 * (n - 2) for e in itertools.combinations(range(n), 2)}, "2(n-2)")
    return None


def _complete_bipartite(m: int, n: int, measure: str):
    N = m + n
    edges = [(i, m + j) for i in range(m) for j in range(n)]
    if measure == "Mo":
        x = min(m, n)
        return ClosedForm(x * (N - x) * (N - 2 * x), "x(n-x)(n-2x), x the smaller side, n the order")
    if measure == "irr":
        return ClosedForm(m * n * abs(m - n), "mn|m-n|")
    if measure == "spr":
        return ClosedForm(m * (m * n + m - 1) + n * (m * n + n - 1), "m(mn+m-1) + n(mn+n-1)")
    if measure == "spr_vertex":
        vals = {v: m * n + m - 1 for v in range(m)} | {v: m * n + n - 1 for v in range(m, N)}
        return ClosedForm(vals, "mn+m-1 on the m side, mn+n-1 on the n side")
    if measure == "espr":
        return ClosedForm(m * n * (2 * m * n - 2), "mn(2mn-2)")
    if measure == "espr_edge":
        return ClosedForm({e: 2 * m * n - 2 for e in edges}, "2mn-2")
    if measure == "peri":
        return ClosedForm(0 if m == n else m * n, "mn if the sides differ, else 0")
    if measure == "peri_vertex":
        small, big = (range(m), range(m, N)) if m < n else (range(m, N), range(m))
        if m == n:
            return ClosedForm({v: 0 for v in range(N)}, "0 when the sides are equal")
        return ClosedForm({v: 0 for v in small} | {v: min(m, n) for v in big},
                          "0 on the smaller side, its size on the larger side")
    if measure == "eperi":
        return ClosedForm(0, "0")
    return None


def _star(k: int, measure: str):
    n = k + 1
    if measure in ("Mo", "irr"):
        return ClosedForm(k * (k - 1), "(n-1)(n-2)")
    if measure == "Mo_terminal" and k >= 2:
        return ClosedForm(k * (k - 2), "(n-1)(n-3)")
    if measure == "Mo_total":
        return ClosedForm(k * (k - 1), "(n-1)(n-2): only centre-leaf pairs are unbalanced")
    if measure == "Mo_total_vertex":
        vals = {0: Fraction(k * (k - 1), 2)} | {v: Fraction(k - 1, 2) for v in range(1, n)}
        return ClosedForm(vals, "k(k-1)/2 at the centre, (k-1)/2 at a leaf")
    if measure == "peri" and k >= 2:
        return ClosedForm(k, "number of leaves")
    if measure == "spr":
        return ClosedForm(2 * k * k, "2k^2")
    if measure == "eperi":
        return ClosedForm(0, "0")
    if measure == "espr":
        return ClosedForm(2 * k * k - 2 * k, "2k^2 - 2k")
    if measure == "espr_edge":
        return ClosedForm({(0, v): 2 * k - 2 for v in range(1, n)}, "2k - 2")
    return None


def _spider(legs: tuple[int, ...], measure: str):
    n = 1 + sum(legs)
    if measure == "Mo_terminal" and len(legs) >= 2:
        return ClosedForm((len(legs) - 2) * (n - 1), "(k-2)(n-1), k legs")
    return None


def _balanced_spider(a: int, b: int, measure: str):
    n = 1 + a * b
    half_cube = Fraction(n * n * (n - 1), 2)
    if measure == "Mo" and a >= 2:
        return ClosedForm(a * a * b * b - a * b * b, "a^2 b^2 - a b^2")
    if measure == "irr" and a >= 2:
        return ClosedForm(a * (a - 1), "a(a-1)")
    if measure == "Mo_terminal" and a >= 2:
        return ClosedForm((a - 2) * (n - 1), "(a-2)(n-1)")
    if measure == "Mo_total" and a >= 2:
        poly = 3 * a * b * n - 5 * a * b * b - 3 * a * n + 3 * a * b + 2 * a + 2 * b * b - 9 * b + 6 * n - 5
        return ClosedForm(_exact(Fraction((n - 1) * poly, 6)),
                          "(n-1)(3abn - 5ab^2 - 3an + 3ab + 2a + 2b^2 - 9b + 6n - 5)/6")
    if measure == "spr" and a >= 2:
        if b % 2 == 0:
            x = half_cube - Fraction(a * b * b * (2 * a * a - 5 * a + 4), 4)
            return ClosedForm(_exact(x), "n^2(n-1)/2 - ab^2(2a^2-5a+4)/4, b even")
        x = half_cube - (Fraction(a ** 3 * b * b, 2) - Fraction(5 * a * a * b * b, 4) + Fraction(a * a, 4)
                         + a * b * b - Fraction(a, 2))
        return ClosedForm(_exact(x), "n^2(n-1)/2 - (a^3b^2/2 - 5a^2b^2/4 + a^2/4 + ab^2 - a/2), b odd")
    if measure == "peri" and a >= 2:
        return ClosedForm(comb(n, 2) - b * comb(a, 2), "C(n,2) - b C(a,2)")
    if measure == "peri_vertex" and a >= 2:
        vals = {0: 0}
        for leg in spider_legs((b,) * a):
            for j, v in enumerate(leg, start=1):
                vals[v] = 1 + a * (j - 1)
        return ClosedForm(vals, "1 + a(j-1) at distance j >= 1, 0 at the centre")
    if measure == "eperi" and a >= 2:
        return ClosedForm(n - 1 - a + a * a * (b - 1) * (b - 2) // 2, "n - 1 - a + a^2(b-1)(b-2)/2")
    if measure == "eperi_edge" and a >= 2:
        vals = {}
        for leg in spider_legs((b,) * a):
            vals[(0, leg[0])] = 0
            for x in range(b - 1):
                vals[(leg[x], leg[x + 1])] = 1 + a * x
        return ClosedForm(vals, "1 + ax for the edge at distances x+1, x+2; 0 at the centre")
    return None


def factorial_tree_size(m: int) -> tuple[int, int]:
    """``(|V|, |E|)`` of the factorial tree with root degree ``m``."""
    edges = m * sum(prod(m - 1 - j for j in range(1, i + 1)) for i in range(m - 1))
    return edges + 1, edges


def _factorial_tree(m: int, measure: str):
    nv, ne = factorial_tree_size(m)
    if measure == "m":
        return ClosedForm(ne, "m * sum_{i=0}^{m-2} prod_{j=1}^{i} (m-1-j)")
    if measure == "n":
        return ClosedForm(nv, "|E| + 1")
    if measure == "irr":
        return ClosedForm(ne, "|E|: degrees drop by one along every edge")
    if measure == "Mo":
        inner = sum(prod(m - 1 - j for j in range(1, i + 1)) for k in range(1, m) for i in range(k - 1, m - 1))
        return ClosedForm(ne * nv - 2 * m * inner,
                          "|E||V| - 2m sum_{k=1}^{m-1} sum_{i=k-1}^{m-2} prod_{j=1}^{i} (m-1-j)")
    return None


def _full_mary_tree(m: int, d: int, measure: str):
    nv = (m ** (d + 1) - 1) // (m - 1)
    if measure == "n":
        return ClosedForm(nv, "(m^{d+1}-1)/(m-1)")
    if d == 1:
        return _star(m, measure)
    if measure == "irr":
        return ClosedForm(m + m ** (d + 1), "m + m^{d+1}")
    if measure == "Mo":
        x = nv * nv - nv - 2 * d * (nv + Fraction(1, m - 1)) + Fraction(2, m - 1) * (nv - 1)
        return ClosedForm(_exact(x), "N^2 - N - 2d(N + 1/(m-1)) + 2(N-1)/(m-1), N the order")
    return None


def _peri_max_spider(n: int, measure: str):
    if measure == "peri":
        return ClosedForm(comb(n, 2), "C(n,2): every pair is unbalanced")
    if measure == "Mo_terminal":
        return ClosedForm(n - 1, "(k-2)(n-1) with k = 3 legs")
    return None


def _five_layer(n: int, measure: str):
    if measure == "m":
        return ClosedForm(4 * n * n, "4n^2")
    return None


def _broom(a: int, b: int, measure: str):
    n = a + b + 1
    if measure == "Mo_terminal" and a >= 1:
        return ClosedForm((a - 1) * (n - 1), "(k-2)(n-1) with k = a+1 legs")
    return None


_FORMS: dict[str, Callable] = {
    "path": _path,
    "cycle": _cycle,
    "complete": _complete,
    "complete-bipartite": _complete_bipartite,
    "star": _star,
    "spider": _spider,
    "balanced-spider": _balanced_spider,
    "factorial-tree": _factorial_tree,
    "full-mary-tree": _full_mary_tree,
    "peri-max-spider": _peri_max_spider,
    "five-layer": _five_layer,
    "broom": _broom,
}

MEASURES = ("Mo", "Mo_terminal", "Mo_total", "Mo_total_vertex", "irr", "peri", "peri_vertex",
            "spr", "spr_vertex", "eperi", "eperi_edge", "espr", "espr_edge", "n", "m")


def closed_form(fs: FamilySpec, measure: str) -> ClosedForm | NotCovered:
    """Exact value of ``measure`` on the family member, or ``NotCovered``."""
    if measure not in MEASURES:
        return NotCovered(f"unknown measure {measure!r}")
    fn = _FORMS.get(fs.tag)
    res = fn(*fs.params, measure) if fn is not None else None
    if res is None:
        return NotCovered(f"no closed form for {measure} on {fs.tag}")
    return res


def broom_min_mostar_edges(a: int, b: int) -> list[tuple[int, int]]:
    """Edges of a broom with ``b > a`` that minimize ``Mo(e)``, as leg indices ``(i, i+1)``.

    Returned pairs index the long leg ``v_0 .. v_b`` (``v_0`` the centre);
    use ``broom_leg_vertex`` for graph ids.
    """
    _need(b > a >= 1, "the broom minimum-edge formula needs b > a >= 1")
    if (a + b + 1) % 2 == 0:
        i = (b - a - 1) // 2
        return [(i, i + 1)]
    i = (b - a) // 2
    return [(i - 1, i), (i, i + 1)]


def computed_value(g: Graph, measure: str) -> Any:
    """The graph's own value of a ``MEASURES`` name (a number, or a per-vertex/per-edge dict)."""
    if measure == "n":
        return g.n
    if measure == "m":
        return g.m
    per_item = {
        "Mo_total_vertex": M.total_mostar,
        "peri_vertex": M.peripherality,
        "spr_vertex": M.sum_peripherality,
        "eperi_edge": M.edge_peripherality,
        "espr_edge": M.edge_sum_peripherality,
    }
    if measure in per_item:
        return dict(per_item[measure](g).values)
    return M.graph_measure(g, measure)


def check_closed_form(fs: FamilySpec, measure: str) -> tuple[Any, Any, bool] | NotCovered:
    """``(formula value, computed value, agree)``; dict formulas are checked on their own keys."""
    cf = closed_form(fs, measure)
    if isinstance(cf, NotCovered):
        return cf
    got = computed_value(generate(fs), measure)
    if isinstance(cf.value, dict):
        ok = all(got.get(k) == v for k, v in cf.value.items())
    else:
        ok = got == cf.value
    return cf.value, got, ok
