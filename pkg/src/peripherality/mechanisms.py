"""Reaction mechanisms, reactant graphs and competition-ranked centrality tables.

Two species are adjacent in the reactant graph when they appear together as
reactants of some reaction.  The third-body token ``M`` is not a species and
never becomes a vertex; a self-reaction such as ``A + A`` gives no edge.

The SuperFast and MOZART-4 reactant graphs ship as edge lists together with
their published rank tables, so the tables can be recomputed and diffed.
"""

from __future__ import annotations

import csv
import io
import itertools
import re
from dataclasses import dataclass
from importlib import resources
from typing import Any, Mapping, Sequence

from . import measures as M
from .graph_core import Graph, build_graph, is_connected

THIRD_BODY = "M"
ARROW = "->"
VERTEX_COLUMNS = ("peri", "spr", "deg", "cc", "bc", "ec", "ecc")
EDGE_COLUMNS = ("edeg", "eecc", "eperi", "espr", "Mo")
# True: larger value ranks first
DESCENDING = {
    "peri": False, "spr": False, "deg": True, "cc": True, "bc": True, "ec": True, "ecc": False,
    "edeg": True, "eecc": False, "eperi": False, "espr": False, "Mo": False,
}
EC_DIGITS = 9
DATASETS = ("superfast", "mozart4")

_TOKEN = re.compile(r"^[A-Za-z0-9_()\[\]*'.-]+$")


class MechanismError(ValueError):
    pass


@dataclass(frozen=True)
class Reaction:
    reactants: tuple[str, ...]
    products: tuple[str, ...]


@dataclass(frozen=True)
class Mechanism:
    reactions: tuple[Reaction, ...]

    @property
    def species(self) -> list[str]:
        names = {s for r in self.reactions for s in r.reactants + r.products}
        return sorted(names)


def _side(text: str, lineno: int, what: str) -> tuple[str, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for tok in text.split("+"):
        tok = tok.strip()
        if not tok or not _TOKEN.match(tok):
            raise MechanismError(f"line {lineno}: bad {what} token {tok!r}")
        out.append(tok)
    return tuple(out)


def parse_mechanism(text: str) -> Mechanism:
    """Parse lines ``R1 + R2 + ... -> P1 + P2 + ...``; ``#`` starts a comment.

    Products are optional but every reaction needs at least one reactant.
    Errors carry the 1-based line number.
    """
    reactions = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.count(ARROW) != 1:
            raise MechanismError(f"line {lineno}: expected exactly one '{ARROW}' in {raw.strip()!r}")
        left, right = line.split(ARROW)
        reactants = _side(left, lineno, "reactant")
        if not reactants:
            raise MechanismError(f"line {lineno}: reaction has no reactants")
        reactions.append(Reaction(reactants, _side(right, lineno, "product")))
    return Mechanism(tuple(reactions))


@dataclass(frozen=True)
class NamedGraph:
    graph: Graph
    names: tuple[str, ...]

    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.names)}

    def edge_names(self) -> list[tuple[str, str]]:
        return sorted(tuple(sorted((self.names[u], self.names[v]))) for u, v in self.graph.edges)


def _named(names: Sequence[str], pairs: set[tuple[str, str]]) -> NamedGraph:
    names = tuple(sorted(names))
    idx = {s: i for i, s in enumerate(names)}
    edges = sorted(tuple(sorted((idx[a], idx[b]))) for a, b in pairs)
    return NamedGraph(build_graph(len(names), edges), names)


def reactant_graph(mech: Mechanism) -> NamedGraph:
    """Species that occur as reactants (``M`` excluded), joined when they react together."""
    names: set[str] = set()
    pairs: set[tuple[str, str]] = set()
    for r in mech.reactions:
        rs = sorted({s for s in r.reactants if s != THIRD_BODY})
        names.update(rs)
        pairs.update(itertools.combinations(rs, 2))
    return _named(names, pairs)


def _data(name: str) -> str:
    return resources.files("peripherality").joinpath("data", name).read_text(encoding="utf-8")


def parse_edge_list(text: str) -> NamedGraph:
    names: set[str] = set()
    pairs: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        if len(line) != 2 or line[0] == line[1]:
            raise MechanismError(f"line {lineno}: expected two distinct species, got {raw.strip()!r}")
        names.update(line)
        pairs.add(tuple(sorted(line)))
    return _named(names, pairs)


def builtin(name: str) -> NamedGraph:
    """Shipped reactant graph: ``superfast`` (15 species) or ``mozart4`` (81 species)."""
    if name not in DATASETS:
        raise MechanismError(f"unknown dataset {name!r}; choose from {list(DATASETS)}")
    return parse_edge_list(_data(f"{name}_edges.txt"))


def builtin_reactions(name: str = "superfast") -> Mechanism:
    if name != "superfast":
        raise MechanismError("only the superfast dataset ships as a reaction list")
    return parse_mechanism(_data("superfast_reactions.txt"))


# -- ranking ---------------------------------------------------------------

@dataclass(frozen=True)
class RankTable:
    kind: str
    columns: tuple[str, ...]
    rows: tuple[str, ...]
    ranks: Mapping[str, Mapping[str, int]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["species" if self.kind == "vertex" else "edge", *self.columns])
        for r in self.rows:
            w.writerow([r, *(self.ranks[r][c] for c in self.columns)])
        return buf.getvalue()

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "columns": list(self.columns),
                "ranks": {r: {c: self.ranks[r][c] for c in self.columns} for r in self.rows}}


def competition_ranks(values: Mapping[Any, Any], descending: bool) -> dict[Any, int]:
    """Rank = 1 + number of keys with a strictly better value ("1224" ties)."""
    ordered = sorted(values.values(), reverse=descending)
    first: dict[Any, int] = {}
    for i, x in enumerate(ordered, 1):
        first.setdefault(x, i)
    return {k: first[x] for k, x in values.items()}


def edge_label(a: str, b: str) -> str:
    a, b = sorted((a, b))
    return f"{a} , {b}"


def vertex_values(g: Graph) -> dict[str, dict[int, Any]]:
    cent = M.classical_centralities(g)
    return {
        "peri": M.peripherality(g).values,
        "spr": M.sum_peripherality(g).values,
        "deg": cent["deg"],
        "cc": cent["cc"],
        "bc": cent["bc"],
        "ec": {v: round(x, EC_DIGITS) for v, x in cent["ec"].items()},
        "ecc": cent["ecc"],
    }


def edge_values(g: Graph) -> dict[str, dict[tuple[int, int], Any]]:
    return {
        "edeg": M.edge_degree(g),
        "eecc": M.edge_eccentricity(g),
        "eperi": M.edge_peripherality(g).values,
        "espr": M.edge_sum_peripherality(g).values,
        "Mo": M.mostar(g).values,
    }


def rank_table(ng: NamedGraph, kind: str) -> RankTable:
    """Competition ranks of every species (``kind="vertex"``) or reaction pair (``"edge"``)."""
    g = ng.graph
    if not is_connected(g):
        raise M.DisconnectedGraphError("rank tables need a connected reactant graph")
    if kind == "vertex":
        columns, values = VERTEX_COLUMNS, vertex_values(g)
        label = {v: ng.names[v] for v in range(g.n)}
    elif kind == "edge":
        columns, values = EDGE_COLUMNS, edge_values(g)
        label = {e: edge_label(ng.names[e[0]], ng.names[e[1]]) for e in g.edges}
    else:
        raise MechanismError(f"kind must be 'vertex' or 'edge', not {kind!r}")
    ranks: dict[str, dict[str, int]] = {label[k]: {} for k in label}
    for col in columns:
        for k, r in competition_ranks(values[col], DESCENDING[col]).items():
            ranks[label[k]][col] = r
    return RankTable(kind, columns, tuple(sorted(ranks)), ranks)


def read_rank_csv(text: str, kind: str) -> RankTable:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    columns = tuple(header[1:])
    ranks = {row[0]: {c: int(x) for c, x in zip(columns, row[1:])} for row in reader if row}
    return RankTable(kind, columns, tuple(sorted(ranks)), ranks)


def reference_table(name: str, kind: str) -> RankTable:
    """Published rank table for a shipped dataset."""
    if name not in DATASETS:
        raise MechanismError(f"unknown dataset {name!r}; choose from {list(DATASETS)}")
    return read_rank_csv(_data(f"{name}_{kind}_ranks.csv"), kind)


def compare_tables(computed: RankTable, reference: RankTable) -> list[tuple[str, str, int, int]]:
    """Cells where the two tables differ as ``(row, column, computed, reference)``."""
    if set(computed.rows) != set(reference.rows) or set(computed.columns) != set(reference.columns):
        raise MechanismError("tables have different rows or columns")
    return [(r, c, computed.ranks[r][c], reference.ranks[r][c])
            for r in reference.rows for c in reference.columns
            if computed.ranks[r][c] != reference.ranks[r][c]]
