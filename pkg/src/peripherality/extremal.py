"""Exhaustive extremal scans over trees and small connected graphs.

``scan`` finds the exact optimum of one objective over every free tree or
every connected labeled graph of a given order, with all witnesses.
``verify_claims`` runs the catalogue of extremal statements in ``CLAIMS`` and
reports pass, fail or finding per claim and order.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Callable, Iterable, Iterator

from . import measures as M
from .graph_core import Graph
from .trees import enumerate_connected_graphs, free_tree_sequences, tree_from_sequence, tree_mo_irr

WITNESS_CAP = 1000
CHECKPOINT_EVERY = 100_000


# -- objectives ---------------------------------------------------------------

def _peri_plus_deg(g: Graph) -> int:
    peri = M.peripherality(g).values
    return max(peri[v] + g.degree(v) for v in range(g.n))


def _eperi_plus_edeg(g: Graph) -> int:
    ep = M.edge_peripherality(g).values
    ed = M.edge_degree(g)
    return max(ep[e] + ed[e] for e in g.edges)


OBJECTIVES: dict[str, Callable[[Graph], int]] = {
    "Mo": lambda g: M.mostar(g).total,
    "Mo_terminal": lambda g: M.terminal_mostar(g).total,
    "Mo_total": lambda g: M.total_mostar(g).total,
    "irr": lambda g: M.irregularity(g).total,
    "Mo_minus_irr": lambda g: M.mostar(g).total - M.irregularity(g).total,
    "peri": lambda g: M.peripherality(g).total,
    "spr": lambda g: M.sum_peripherality(g).total,
    "eperi": lambda g: M.edge_peripherality(g).total,
    "espr": lambda g: M.edge_sum_peripherality(g).total,
    "peri_plus_deg": _peri_plus_deg,
    "eperi_plus_edeg": _eperi_plus_edeg,
}

# objectives with a direct formula on tree level sequences
_TREE_FAST: dict[str, Callable[[tuple[int, int]], int]] = {
    "Mo": lambda mi: mi[0],
    "irr": lambda mi: mi[1],
    "Mo_minus_irr": lambda mi: mi[0] - mi[1],
}


def objective(name: str) -> Callable[[Graph], int]:
    try:
        return OBJECTIVES[name]
    except KeyError:
        raise ValueError(f"unsupported objective {name!r}; choose from {sorted(OBJECTIVES)}") from None


# -- results ------------------------------------------------------------------

Witness = tuple[tuple[int, int], ...]


@dataclass
class ExtremalResult:
    objective: str
    n: int
    direction: str
    generator: str
    optimum: int | None = None
    witnesses: list[Witness] = field(default_factory=list)
    witness_count: int = 0
    count_scanned: int = 0

    def offer(self, value: int, witness: Callable[[], Witness]) -> None:
        self.count_scanned += 1
        better = self.optimum is None or (value > self.optimum if self.direction == "max" else value < self.optimum)
        if better:
            self.optimum = int(value)
            self.witnesses = [witness()]
            self.witness_count = 1
        elif value == self.optimum:
            self.witness_count += 1
            if len(self.witnesses) < WITNESS_CAP:
                self.witnesses.append(witness())

    def to_dict(self) -> dict:
        return {
            "objective": self.objective,
            "n": self.n,
            "direction": self.direction,
            "generator": self.generator,
            "optimum": self.optimum,
            "witness_count": self.witness_count,
            "witnesses": [[list(e) for e in w] for w in sorted(self.witnesses)],
            "count_scanned": self.count_scanned,
        }


def graphs(n: int, generator: str) -> Iterator[Graph]:
    if generator == "trees":
        for seq in free_tree_sequences(n):
            yield tree_from_sequence(seq)
    elif generator == "connected":
        yield from enumerate_connected_graphs(n)
    else:
        raise ValueError(f"unknown generator {generator!r}; use 'trees' or 'connected'")


def scan(obj: str, n: int, direction: str = "max", generator: str = "trees") -> ExtremalResult:
    """Exact optimum of ``obj`` over all graphs from ``generator`` of order ``n``."""
    if direction not in ("max", "min"):
        raise ValueError("direction must be 'max' or 'min'")
    fn = objective(obj)
    res = ExtremalResult(obj, n, direction, generator)
    if generator == "trees" and obj in _TREE_FAST:
        fast = _TREE_FAST[obj]
        for seq in free_tree_sequences(n):
            res.offer(fast(tree_mo_irr(seq)), lambda s=seq: tuple(tree_from_sequence(s).edges))
        return res
    for g in graphs(n, generator):
        res.offer(fn(g), lambda g=g: g.edges)
    return res


def scan_many(objs: Iterable[tuple[str, str]], n: int, generator: str) -> dict[tuple[str, str], ExtremalResult]:
    """Several ``(objective, direction)`` scans in one pass over the graphs."""
    objs = list(objs)
    out = {od: ExtremalResult(od[0], n, od[1], generator) for od in objs}
    fns = {od: objective(od[0]) for od in objs}
    for g in graphs(n, generator):
        for od in objs:
            out[od].offer(fns[od](g), lambda g=g: g.edges)
    return out


# -- long tree runs with checkpoints ---------------------------------------

def _write_checkpoint(path: Path, res: ExtremalResult, cursor: list[int]) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    lines = [
        f"objective {res.objective}",
        f"n {res.n}",
        f"direction {res.direction}",
        f"cursor {' '.join(map(str, cursor))}",
        f"best {res.optimum}",
        f"count {res.count_scanned}",
        f"witness_count {res.witness_count}",
    ]
    lines += ["witness " + " ".join(f"{u}-{v}" for u, v in w) for w in res.witnesses]
    tmp.write_text("\n".join(lines) + "\n")
    os.replace(tmp, path)


def _read_checkpoint(path: Path) -> tuple[ExtremalResult, list[int]]:
    fields: dict[str, str] = {}
    witnesses = []
    for line in path.read_text().splitlines():
        key, _, val = line.partition(" ")
        if key == "witness":
            witnesses.append(tuple(tuple(int(x) for x in e.split("-")) for e in val.split()))
        else:
            fields[key] = val
    res = ExtremalResult(fields["objective"], int(fields["n"]), fields["direction"], "trees")
    res.optimum = None if fields["best"] == "None" else int(fields["best"])
    res.count_scanned = int(fields["count"])
    res.witness_count = int(fields["witness_count"])
    res.witnesses = witnesses
    return res, [int(x) for x in fields["cursor"].split()]


def scan_trees_checkpointed(obj: str, n: int, direction: str, checkpoint: Path | str,
                            every: int = CHECKPOINT_EVERY, progress: Callable[[int], None] | None = None) -> ExtremalResult:
    """Tree scan that saves its state every ``every`` trees and resumes from ``checkpoint`` if present.

    The cursor is the next level sequence still to be examined, so a resumed
    run sees exactly the trees an uninterrupted run would.
    """
    checkpoint = Path(checkpoint)
    fn = objective(obj)
    fast = _TREE_FAST.get(obj)
    start = None
    res = ExtremalResult(obj, n, direction, "trees")
    if checkpoint.exists():
        res, start = _read_checkpoint(checkpoint)
        if (res.objective, res.n, res.direction) != (obj, n, direction):
            raise ValueError(f"checkpoint {checkpoint} belongs to a different scan")
        if not start:
            return res
    since = 0
    for seq in free_tree_sequences(n, start):
        if since == every:
            _write_checkpoint(checkpoint, res, seq)
            if progress:
                progress(res.count_scanned)
            since = 0
        val = fast(tree_mo_irr(seq)) if fast else fn(tree_from_sequence(seq))
        res.offer(val, lambda s=seq: tuple(tree_from_sequence(s).edges))
        since += 1
    _write_checkpoint(checkpoint, res, [])
    return res


# -- structural helpers for claims -----------------------------------------

def leg_attachments(g: Graph) -> set[int] | None:
    """Vertices the legs hang from; ``None`` if some leg runs into another leaf (a path)."""
    out = set()
    for leaf in range(g.n):
        if g.degree(leaf) != 1:
            continue
        prev, cur = leaf, g.adj[leaf][0]
        while g.degree(cur) == 2:
            prev, cur = cur, next(w for w in g.adj[cur] if w != prev)
        if g.degree(cur) == 1:
            return None
        out.add(cur)
    return out


def is_path(g: Graph) -> bool:
    return g.m == g.n - 1 and max(g.degrees(), default=0) <= 2


def is_star(g: Graph) -> bool:
    return g.m == g.n - 1 and g.n >= 2 and max(g.degrees()) == g.n - 1


# -- claim catalogue --------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    generator: str
    objective: str
    direction: str
    orders: tuple[int, ...]
    expected: Callable[[int], int | None]
    relation: str = "eq"  # eq: optimum equals expected; lt: optimum below expected
    witness_check: Callable[[Graph], bool] | None = None
    witness_rule: str = "all"  # all: every witness passes; any: at least one does
    finding: bool = False  # mismatches are reported, not failed
    long: bool = False


def _legs_at_one_vertex(g: Graph) -> bool:
    att = leg_attachments(g)
    return att is not None and len(att) == 1


CLAIMS: tuple[Claim, ...] = (
    Claim("tree_min_mo", "min Mo over trees is floor((n-1)^2/2), attained only by the path",
          "trees", "Mo", "min", tuple(range(4, 13)), lambda n: (n - 1) ** 2 // 2, witness_check=is_path),
    Claim("tree_max_mo", "max Mo over trees is (n-1)(n-2), attained only by the star",
          "trees", "Mo", "max", tuple(range(4, 13)), lambda n: (n - 1) * (n - 2), witness_check=is_star),
    Claim("tree_max_mo_terminal", "max terminal Mostar over trees is (n-1)(n-3), attained only by the star",
          "trees", "Mo_terminal", "max", tuple(range(4, 13)), lambda n: (n - 1) * (n - 3), witness_check=is_star),
    Claim("tree_max_mo_minus_irr", "max (Mo - irr) over trees is n^2 - 7n + 18",
          "trees", "Mo_minus_irr", "max", tuple(range(7, 13)), lambda n: n * n - 7 * n + 18),
    Claim("tree_max_mo_minus_irr_22", "max (Mo - irr) over trees of order 22 is 346",
          "trees", "Mo_minus_irr", "max", (22,), lambda n: 346, long=True),
    Claim("tree_max_peri", "max peri over trees is C(n,2)",
          "trees", "peri", "max", tuple(range(9, 13)), lambda n: comb(n, 2)),
    Claim("tree_max_peri_small", "max peri over trees is below C(n,2)",
          "trees", "peri", "max", tuple(range(4, 9)), lambda n: comb(n, 2), relation="lt", finding=True),
    Claim("tree_peri_plus_deg", "max over vertices of peri(v)+deg(v) over trees is n",
          "trees", "peri_plus_deg", "max", tuple(range(5, 13)), lambda n: n),
    Claim("tree_eperi_plus_edeg", "max over edges of eperi(e)+edeg(e) over trees is n-1",
          "trees", "eperi_plus_edeg", "max", tuple(range(6, 13)), lambda n: n - 1),
    Claim("tree_max_eperi_path", "max eperi over trees equals eperi of the path",
          "trees", "eperi", "max", tuple(range(4, 13)),
          lambda n: (n - 2) * (n - 4) // 2 if n % 2 == 0 else (n - 3) ** 2 // 2, finding=True),
    Claim("graph_peri_plus_deg", "max over vertices of peri(v)+deg(v) over connected graphs is 2n-4",
          "connected", "peri_plus_deg", "max", tuple(range(3, 7)), lambda n: 2 * n - 4),
    Claim("graph_eperi_plus_edeg", "max over edges of eperi(e)+edeg(e) over connected graphs is 2n-4",
          "connected", "eperi_plus_edeg", "max", (5, 6), lambda n: 2 * n - 4),
    Claim("graph_min_espr", "min espr over connected graphs is 2(n-1)(n-2), attained by the star",
          "connected", "espr", "min", tuple(range(3, 7)), lambda n: 2 * (n - 1) * (n - 2),
          witness_check=is_star, witness_rule="any"),
    Claim("graph_mo_terminal_legs", "some terminal-Mostar maximizer has all legs at one vertex",
          "connected", "Mo_terminal", "max", tuple(range(4, 7)), lambda n: None,
          witness_check=_legs_at_one_vertex, witness_rule="any"),
)

CLAIMS_BY_ID = {c.id: c for c in CLAIMS}


def _graph_of(n: int, w: Witness) -> Graph:
    return Graph(n, list(w))


def check_claim(claim: Claim, n: int, result: ExtremalResult) -> dict:
    opt = result.optimum
    exp = claim.expected(n)
    detail: dict = {"n": n, "optimum": opt, "expected": exp, "count_scanned": result.count_scanned,
                    "witness_count": result.witness_count}
    ok = True
    if exp is not None:
        ok = opt == exp if claim.relation == "eq" else opt < exp
    if claim.witness_check is not None:
        if result.witness_count > len(result.witnesses):
            raise RuntimeError(f"too many witnesses to check {claim.id} at n={n}")
        flags = [bool(claim.witness_check(_graph_of(n, w))) for w in result.witnesses]
        passing = sum(flags)
        detail["witnesses_satisfying"] = passing
        ok = ok and (all(flags) if claim.witness_rule == "all" else any(flags))
        bad = [w for w, f in zip(result.witnesses, flags) if not f]
        if bad:
            detail["witness_not_satisfying"] = [list(e) for e in sorted(bad)[0]]
    if not ok and exp is not None and opt != exp:
        detail["counterexample"] = [list(e) for e in sorted(result.witnesses)[0]]
    detail["status"] = "pass" if ok else ("finding" if claim.finding else "fail")
    return detail


def verify_claims(claim_ids: Iterable[str] | None = None, n_range: tuple[int, int] | None = None,
                  long: bool = False, checkpoint_dir: Path | str | None = None,
                  progress: Callable[[str], None] | None = None) -> dict:
    """Run claims over their orders (intersected with ``n_range``) and collect a JSON-ready report."""
    chosen = list(CLAIMS) if claim_ids is None else [CLAIMS_BY_ID[c] for c in claim_ids]
    report: dict = {"claims": {}}
    for claim in chosen:
        if claim.long and not long:
            report["claims"][claim.id] = {"statement": claim.statement, "status": "skipped",
                                          "reason": "long run; pass --long"}
            continue
        orders = [n for n in claim.orders if n_range is None or n_range[0] <= n <= n_range[1]]
        rows = []
        for n in orders:
            if claim.long:
                cp = Path(checkpoint_dir or ".") / f"checkpoint_{claim.objective}_{n}.txt"
                res = scan_trees_checkpointed(claim.objective, n, claim.direction, cp,
                                              progress=(lambda c: progress(f"{claim.id}: {c} trees")) if progress else None)
            else:
                res = scan(claim.objective, n, claim.direction, claim.generator)
            rows.append(check_claim(claim, n, res))
            if progress:
                progress(f"{claim.id} n={n}: {rows[-1]['status']}")
        statuses = {r["status"] for r in rows}
        overall = "fail" if "fail" in statuses else "finding" if "finding" in statuses else "pass" if rows else "skipped"
        report["claims"][claim.id] = {"statement": claim.statement, "status": overall, "results": rows}
    report["summary"] = {s: sum(1 for c in report["claims"].values() if c["status"] == s)
                         for s in ("pass", "fail", "finding", "skipped")}
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


CLAIM_GROUPS = {"trees": "trees", "graphs": "connected"}


def load_claim_ids(spec: str) -> list[str] | None:
    """``all``, ``trees``, ``graphs``, a comma list of ids, or a file with one id per line."""
    if spec == "all":
        return None
    if spec in CLAIM_GROUPS:
        return [c.id for c in CLAIMS if c.generator == CLAIM_GROUPS[spec]]
    p = Path(spec)
    ids = p.read_text().split() if p.exists() else spec.split(",")
    unknown = [i for i in ids if i not in CLAIMS_BY_ID]
    if unknown:
        raise ValueError(f"unknown claim id(s): {unknown}; known: {sorted(CLAIMS_BY_ID)}")
    return ids


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        return int(lo), int(lo)
    return int(lo), int(hi)

