"""Command-line entry point: ``peripherality <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad parameters, a
disconnected graph where distances are needed, a failed reduction check) and
2 on a usage error.  Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import extremal, families, mechanisms, random_graphs, reductions
from . import measures as M
from .graph_core import Graph, GraphError, format_graph, parse_graph


class CliError(Exception):
    """Domain failure reported with exit status 1."""


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {(M.edge_key(k) if isinstance(k, tuple) else str(k)): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return M.format_number(x) if isinstance(x, float) else x


def _dump(obj: Any) -> str:
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("THREADS")
    return max(1, int(env)) if env and env.isdigit() else 1


# -- subcommands ------------------------------------------------------------

def cmd_gen(args: argparse.Namespace) -> None:
    g = families.generate(families.parse_spec([args.tag, *args.params]))
    _write(format_graph(g), args.out)


def cmd_measure(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.input))
    if args.measure:
        _write(_dump({name: M.graph_measure(g, name) for name in args.measure}), args.out)
        return
    rep = M.measure_report(g)
    _write(rep.to_csv() if args.format == "csv" else rep.to_json(), args.out)


def _render_table(table: mechanisms.RankTable, fmt: str) -> str:
    if fmt == "json":
        return _dump(table.to_dict())
    if fmt == "text":
        width = max(len(r) for r in table.rows)
        head = " ".join([("species" if table.kind == "vertex" else "edge").ljust(width),
                         *(c.rjust(5) for c in table.columns)])
        lines = [head] + [" ".join([r.ljust(width), *(str(table.ranks[r][c]).rjust(5) for c in table.columns)])
                          for r in table.rows]
        return "\n".join(lines) + "\n"
    return table.to_csv()


def cmd_rank(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.input))
    ng = mechanisms.NamedGraph(g, tuple(str(v) for v in range(g.n)))
    _write(_render_table(mechanisms.rank_table(ng, args.kind), args.format), args.out)


def cmd_oracle(args: argparse.Namespace) -> None:
    fs = families.parse_spec([args.tag, *args.params])
    res = families.check_closed_form(fs, args.measure)
    if isinstance(res, families.NotCovered):
        raise CliError(res.reason)
    cf = families.closed_form(fs, args.measure)
    expected, got, ok = res
    _write(_dump({"family": fs.tag, "params": list(fs.params), "measure": args.measure,
                  "formula": cf.formula, "closed_form": expected, "computed": got, "agree": ok}), args.out)
    if not ok:
        raise CliError("closed form and computed value differ")


def cmd_verify(args: argparse.Namespace) -> None:
    ids = extremal.load_claim_ids(args.claims)
    n_range = extremal.parse_range(args.n) if args.n else None
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.verbose else None
    report = extremal.verify_claims(ids, n_range, long=args.long, checkpoint_dir=args.checkpoint_dir,
                                    progress=progress)
    _write(extremal.report_json(report), args.out)


def cmd_scan(args: argparse.Namespace) -> None:
    lo, hi = extremal.parse_range(args.n)
    if hi > 12 and args.generator == "trees" and not args.long:
        raise CliError("tree scans beyond n = 12 take minutes; pass --long")
    out = []
    for n in range(lo, hi + 1):
        if args.checkpoint:
            if args.generator != "trees":
                raise CliError("checkpointing is only available for tree scans")
            res = extremal.scan_trees_checkpointed(args.objective, n, args.direction,
                                                   Path(args.checkpoint) / f"checkpoint_{args.objective}_{n}.txt")
        else:
            res = extremal.scan(args.objective, n, args.direction, args.generator)
        out.append(res.to_dict())
    _write(_dump(out), args.out)


def _load_gadget_or_graph(text: str) -> Graph | reductions.VertexWeightedGraph:
    if text.lstrip().startswith("{"):
        return reductions.gadget_from_dict(json.loads(text)).graph
    return parse_graph(text)


def cmd_reduce(args: argparse.Namespace) -> None:
    g = parse_graph(_read(args.input))
    if args.validate:
        res = reductions.validate_reduction(g, args.k, args.validate)
        _write(_dump({"kind": res.kind, "k": res.k, "has_clique": res.has_clique,
                      "gadget_answer": res.gadget_answer, "witness": res.witness, "agrees": res.agrees}), args.out)
        if not res.agrees:
            raise CliError("the reduction disagrees with plain CLIQUE on this input")
        return
    if args.kind is None:
        raise CliError("pass --kind or --validate")
    if args.kind == "Jp":
        gadget = reductions.build_J(g, prune=True)
    else:
        gadget = reductions.BUILDERS[args.kind](g)
    _write(gadget.to_json(), args.out)


def cmd_clique(args: argparse.Namespace) -> None:
    g = _load_gadget_or_graph(_read(args.input))
    if args.constraint:
        found = reductions.constrained_clique(g, args.k, args.constraint)
    else:
        core = g.core if isinstance(g, reductions.VertexWeightedGraph) else g
        found = next(reductions.cliques(core, args.k), None)
    _write(_dump({"k": args.k, "constraint": args.constraint, "found": found is not None,
                  "clique": list(found) if found is not None else None}), args.out)


def _mech_graph(args: argparse.Namespace) -> mechanisms.NamedGraph:
    if args.input:
        return mechanisms.reactant_graph(mechanisms.parse_mechanism(_read(args.input)))
    return mechanisms.builtin(args.dataset)


def cmd_mech(args: argparse.Namespace) -> None:
    ng = _mech_graph(args)
    if args.action == "graph":
        lines = [f"{a} {b}\n" for a, b in ng.edge_names()]
        _write("".join(lines), args.out)
        return
    table = mechanisms.rank_table(ng, args.kind)
    if args.action == "rank":
        _write(_render_table(table, args.format), args.out)
        return
    if args.input:
        raise CliError("diff compares against a shipped dataset; use --dataset")
    diff = mechanisms.compare_tables(table, mechanisms.reference_table(args.dataset, args.kind))
    _write(_dump({"dataset": args.dataset, "kind": args.kind, "mismatches": [list(d) for d in diff]}), args.out)
    if diff:
        raise CliError(f"{len(diff)} cells differ from the published table")


def cmd_random(args: argparse.Namespace) -> None:
    if args.action == "exact":
        out = {"n": args.n, "expected_irr": random_graphs.expected_irr(args.n),
               "form_gap": random_graphs.form_gap(args.n)}
        if args.n <= 5:
            out["enumerated"] = random_graphs.exact_expected_irr(args.n)
        _write(_dump(out), args.out)
        return
    if args.trials > 2000 and not args.long:
        raise CliError("more than 2000 trials needs --long")
    exp = random_graphs.monte_carlo_irr(args.n, args.trials, args.seed, args.p, threads=_threads(args))
    d = exp.to_dict()
    if args.format == "json":
        _write(_dump(d), args.out)
    else:
        _write("".join(f"{k}: {_jsonable(d[k])}\n" for k in sorted(d)), args.out)


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="peripherality", description="Peripherality and centrality measures of graphs.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: $THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--out", default=None, help="output file (default stdout)")
        return sp

    sp = add("gen", "generate a named family member")
    sp.add_argument("tag", choices=sorted(families.GENERATORS))
    sp.add_argument("params", nargs="*")
    sp.set_defaults(func=cmd_gen)

    sp = add("measure", "all measures of a graph")
    sp.add_argument("--in", dest="input", default=None, help="graph text file (default stdin)")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--measure", action="append", choices=sorted(M.SCALAR_MEASURES),
                    help="print only these graph totals (repeatable)")
    sp.set_defaults(func=cmd_measure)

    sp = add("rank", "competition-ranked vertex or edge table of a graph")
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--kind", choices=("vertex", "edge"), default="vertex")
    sp.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    sp.set_defaults(func=cmd_rank)

    sp = add("oracle", "closed form next to the computed value")
    sp.add_argument("tag", choices=sorted(families.GENERATORS))
    sp.add_argument("params", nargs="*")
    sp.add_argument("measure", choices=families.MEASURES)
    sp.set_defaults(func=cmd_oracle)

    sp = add("verify", "check extremal claims by exhaustive search")
    sp.add_argument("--claims", default="all", help="all, trees, graphs, comma list of ids, or a file")
    sp.add_argument("--n", default=None, help="restrict orders to A..B")
    sp.add_argument("--long", action="store_true", help="include runs of several minutes")
    sp.add_argument("--checkpoint-dir", default=None)
    sp.add_argument("--verbose", action="store_true")
    sp.set_defaults(func=cmd_verify)

    sp = add("scan", "optimum of one objective over all trees or connected graphs")
    sp.add_argument("--objective", required=True, choices=sorted(extremal.OBJECTIVES))
    sp.add_argument("--n", required=True, help="order or range A..B")
    sp.add_argument("--direction", choices=("max", "min"), default="max")
    sp.add_argument("--generator", choices=("trees", "connected"), default="trees")
    sp.add_argument("--checkpoint", default=None, help="directory for resumable tree-scan checkpoints")
    sp.add_argument("--long", action="store_true")
    sp.set_defaults(func=cmd_scan)

    sp = add("reduce", "build a clique gadget, or check one reduction on an input graph")
    sp.add_argument("--kind", choices=("H", "Hp", "J", "Jp", "X"), default=None)
    sp.add_argument("--in", dest="input", default=None)
    sp.add_argument("--validate", choices=sorted(reductions.KINDS), default=None)
    sp.add_argument("--k", type=int, default=4)
    sp.set_defaults(func=cmd_reduce)

    sp = add("clique", "first k-clique, optionally under a measure constraint")
    sp.add_argument("--in", dest="input", default=None, help="graph text or gadget JSON")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--constraint", default=None, help="e.g. Mo=, irr!=, peri=, eecc!=")
    sp.set_defaults(func=cmd_clique)

    sp = add("mech", "reactant graphs of reaction mechanisms")
    sp.add_argument("action", choices=("rank", "diff", "graph"))
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--dataset", choices=mechanisms.DATASETS, default="superfast")
    src.add_argument("--in", dest="input", default=None, help="reaction list file")
    sp.add_argument("--kind", choices=("vertex", "edge"), default="vertex")
    sp.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    sp.set_defaults(func=cmd_mech)

    sp = add("random", "irregularity of G(n, p)")
    sp.add_argument("action", choices=("irr", "exact"))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--p", type=float, default=0.5)
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--long", action="store_true")
    sp.set_defaults(func=cmd_random)
    return p


DOMAIN_ERRORS = (CliError, GraphError, ValueError, KeyError, OSError, RuntimeError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except DOMAIN_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"peripherality {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
