"""Batch command-line front end.

Exit codes: 0 success/PASS, 1 FAIL/not-found/false, 2 usage error,
3 budget or size-limit error.  Output is deterministic for fixed inputs and
seed; every FAIL prints a machine-readable line prefixed `WITNESS:`.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from pathlib import Path

from . import invariants, monotone, normal_form
from .errors import (BudgetExceededError, FormulaSyntaxError, FotransError,
                     NoStarColoringError, SizeLimitError, UnboundVariableError)
from .graphs import (ColoredGraph, Subgraph, complete, complete_binary_tree,
                     cycle, edgeless, graph_from_text, graph_to_text, grid,
                     half_graph, nonisomorphic_graphs, path, powerset_graph,
                     star)
from .logic import evaluate, free_vars, parse, solution_set
from .transduction import (dumps_transduction, loads_transduction,
                           witness_search)

DEFAULT_BUDGET = 2 ** 20
DEFAULT_CAP = 4


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    inputs: tuple
    budget: int = DEFAULT_BUDGET
    cap: int = DEFAULT_CAP
    fmt: str = "table"
    seed: int = 0
    iso: bool = False


GENERATORS = {
    "path": (path, 1),
    "cycle": (cycle, 1),
    "grid": (grid, 2),
    "complete": (complete, 1),
    "star": (star, 1),
    "binary-tree": (complete_binary_tree, 1),
    "edgeless": (edgeless, 1),
    "half-graph": (half_graph, 1),
    "powerset": (powerset_graph, 1),
}


def _load_graph(path_str: str) -> ColoredGraph:
    return graph_from_text(Path(path_str).read_text())


def _compact_graph(cg: ColoredGraph) -> str:
    parts = [f"n={cg.graph.n}",
             "e=" + ",".join(f"{u}-{v}" for u, v in sorted(cg.graph.edges))]
    for name in sorted(cg.predicates):
        parts.append(f"{name}=" + ",".join(str(v) for v in sorted(cg.pred(name))))
    return ";".join(parts)


def _csv_row(fields) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(fields)
    return buf.getvalue()


def _parse_assignment(text: str) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        var, _, value = part.partition("=")
        if not _:
            raise ValueError(f"bad assignment entry {part!r}")
        out[var.strip()] = int(value)
    return out


def _cmd_generate(args, config, out) -> int:
    maker, arity = GENERATORS[args.family]
    if len(args.params) != arity:
        raise ValueError(f"{args.family} takes {arity} parameter(s)")
    out.write(graph_to_text(maker(*args.params)))
    return 0


def _cmd_eval(args, config, out) -> int:
    cg = _load_graph(args.graph)
    formula = parse(args.formula)
    fv = sorted(free_vars(formula))
    if args.assignment is not None:
        value = evaluate(cg, formula, _parse_assignment(args.assignment))
        out.write("true\n" if value else "false\n")
        return 0 if value else 1
    if not fv:
        value = evaluate(cg, formula, {})
        out.write("true\n" if value else "false\n")
        return 0 if value else 1
    rows = sorted(solution_set(cg, formula, fv))
    if config.fmt == "csv":
        out.write(_csv_row(fv) + "\n")
        for row in rows:
            out.write(_csv_row(row) + "\n")
    else:
        out.write("vars: " + " ".join(fv) + "\n")
        for row in rows:
            out.write("(" + ",".join(str(v) for v in row) + ")\n")
    return 0


def _load_coloring(path_str: str) -> dict:
    sets: dict = {}
    for lineno, raw in enumerate(Path(path_str).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "color":
            raise ValueError(f"line {lineno}: coloring files hold color records only")
        sets[fields[1]] = frozenset(int(v) for v in fields[2:])
    return sets


def _cmd_apply(args, config, out) -> int:
    t = loads_transduction(Path(args.transduction).read_text())
    cg = _load_graph(args.graph)
    names = t.expansion_names
    sets = _load_coloring(args.coloring) if args.coloring else {}
    unknown = set(sets) - set(names)
    if unknown:
        raise ValueError(f"coloring names {sorted(unknown)} are not expanded "
                         f"by the pipeline")
    missing = [n for n in names if n not in sets]
    if missing:
        raise ValueError(f"missing coloring for predicates {missing}")
    from .transduction import apply_with_coloring
    result = apply_with_coloring(t, cg, [sets[n] for n in names])
    out.write(graph_to_text(result))
    return 0


def _cmd_witness(args, config, out) -> int:
    t = loads_transduction(Path(args.transduction).read_text())
    source = _load_graph(args.source)
    target = _load_graph(args.target).graph
    result = witness_search(t, source, target, config.budget, iso=config.iso)
    if result.found:
        out.write(f"found tried={result.tried}\n")
        for name, members in zip(t.expansion_names, result.choices):
            line = " ".join(["color", name] + [str(v) for v in sorted(members)])
            out.write(line + "\n")
        return 0
    out.write(f"not found tried={result.tried}\n")
    out.write("WITNESS: none\n")
    return 1


_INVARIANTS = {
    "bandwidth": lambda g: invariants.bandwidth(g, with_ordering=True),
    "pathwidth": lambda g: invariants.pathwidth(g, with_ordering=True),
    "treewidth": lambda g: invariants.treewidth(g, with_ordering=True),
    "star-chromatic": lambda g: invariants.star_chromatic_number(
        g, with_coloring=True),
}


def _cmd_invariant(args, config, out) -> int:
    cg = _load_graph(args.graph)
    value, blob = _INVARIANTS[args.name](cg.graph)
    if config.fmt == "csv":
        graph_id = Path(args.graph).stem
        out.write(_csv_row(["graph_id", "invariant", "value", "witness_blob"]) + "\n")
        out.write(_csv_row([graph_id, args.name, value,
                            " ".join(str(v) for v in blob)]) + "\n")
    else:
        out.write(f"{value}\n")
    return 0


def _load_subgraph(path_str: str, host) -> Subgraph:
    cg = graph_from_text(Path(path_str).read_text())
    if cg.graph.n != host.n:
        raise ValueError("subgraph file must use the host vertex numbering "
                         f"(n {cg.graph.n} != {host.n})")
    vertices = cg.pred("vertices") if "vertices" in cg.predicates \
        else frozenset(range(host.n))
    return Subgraph(vertices, cg.graph.edges)


def _cmd_verify_monotone(args, config, out) -> int:
    g = _load_graph(args.graph).graph
    h = _load_subgraph(args.subgraph, g)
    if not h.is_subgraph_of(g):
        raise ValueError("h is not a subgraph of g")
    report = monotone.verify_monotone(g, h, max_colors=args.max_colors)
    expansion_text = graph_to_text(report.expansion.base)
    if report.ok:
        out.write(f"PASS colors={report.coloring.num_colors}\n")
        out.write(expansion_text)
        return 0
    out.write(f"FAIL colors={report.coloring.num_colors}\n")
    out.write("WITNESS: produced=" + _compact_graph(ColoredGraph(
        g, {"vertices": report.produced.vertices})) + "\n")
    out.write(expansion_text)
    return 1


def _cmd_normal_form(args, config, out) -> int:
    gt = normal_form.loads_gaifman_transduction(Path(args.spec).read_text())
    d = normal_form.decompose(gt)
    out.write(f"copy-arity {d.copy_arity}\n")
    out.write("immersive:\n")
    for line in dumps_transduction(d.immersive).splitlines():
        out.write(f"  {line}\n")
    out.write("perturbation:\n")
    for line in dumps_transduction(d.perturbation).splitlines():
        out.write(f"  {line}\n")
    corpus = None
    if args.verify_corpus:
        files = sorted(Path(args.verify_corpus).iterdir())
        corpus = [graph_from_text(p.read_text()) for p in files if p.is_file()]
    elif args.verify_upto:
        corpus = [ColoredGraph.bare(g)
                  for k in range(1, args.verify_upto + 1)
                  for g in nonisomorphic_graphs(k)]
    if corpus is None:
        return 0
    result = normal_form.verify_decomposition(gt, d, corpus, config.budget)
    if result.ok:
        out.write(f"VERIFY PASS colorings={result.colorings_checked}\n")
        return 0
    out.write("VERIFY FAIL\n")
    if result.declaration_failures:
        kind, text, rep = result.declaration_failures[0]
        cg, tup = rep.witness
        out.write(f"WITNESS: leaf={kind} formula={text} "
                  f"graph={_compact_graph(cg)} tuple={tup}\n")
    elif not result.psi_locality.holds:
        cg, tup = result.psi_locality.witness
        out.write(f"WITNESS: psi-not-strongly-local graph={_compact_graph(cg)} "
                  f"tuple={tup}\n")
    else:
        ce = result.counterexample
        out.write(f"WITNESS: source={_compact_graph(ce.source)} "
                  f"coloring={[sorted(s) for s in ce.coloring]} "
                  f"expected={_compact_graph(ColoredGraph.bare(ce.expected))} "
                  f"produced={_compact_graph(ColoredGraph.bare(ce.produced))}\n")
    return 1


def _cmd_pattern(args, config, out) -> int:
    cg = _load_graph(args.graph)
    formula = parse(args.formula)
    if args.kind == "half-graph":
        best, witness = invariants.half_graph_pattern_max(
            cg, formula, config.cap, distinct=args.distinct)
        out.write(f"max {best}\n")
        if witness is not None:
            out.write("a: " + " ".join(str(t[0]) if len(t) == 1 else str(t)
                                       for t in witness.a_tuples) + "\n")
            out.write("b: " + " ".join(str(t[0]) if len(t) == 1 else str(t)
                                       for t in witness.b_tuples) + "\n")
        return 0
    if args.kind == "order":
        witness = invariants.order_property(cg, formula, args.n, config.budget,
                                            distinct=args.distinct)
        if witness is None:
            out.write("absent\n")
            out.write("WITNESS: none\n")
            return 1
        out.write("found\n")
        out.write("a: " + " ".join(str(t[0]) if len(t) == 1 else str(t)
                                   for t in witness.a_tuples) + "\n")
        return 0
    witness = invariants.independence_property(cg, formula, args.n, config.budget,
                                               distinct=args.distinct)
    if witness is None:
        out.write("absent\n")
        out.write("WITNESS: none\n")
        return 1
    out.write("found\n")
    out.write("a: " + " ".join(str(t[0]) if len(t) == 1 else str(t)
                               for t in witness.a_tuples) + "\n")
    for subset, b in witness.b_tuples:
        label = "{" + ",".join(str(i) for i in sorted(subset)) + "}"
        val = str(b[0]) if len(b) == 1 else str(b)
        out.write(f"b{label}: {val}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fotrans")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for sampled sub-experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generator graph as text")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("params", type=int, nargs="*")

    p = sub.add_parser("eval", help="evaluate a formula on a graph")
    p.add_argument("graph")
    p.add_argument("formula")
    p.add_argument("assignment", nargs="?", help="e.g. x=0,y=2")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("apply", help="run a transduction pipeline")
    p.add_argument("transduction")
    p.add_argument("graph")
    p.add_argument("coloring", nargs="?")

    p = sub.add_parser("witness", help="search expansions mapping source onto target")
    p.add_argument("transduction")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--iso", action="store_true")

    p = sub.add_parser("invariant", help="compute an exact graph invariant")
    p.add_argument("name", choices=sorted(_INVARIANTS))
    p.add_argument("graph")
    p.add_argument("--format", choices=("table", "csv"), default="table")

    p = sub.add_parser("normal-form",
                       help="decompose a Gaifman-form transduction and verify")
    p.add_argument("spec")
    p.add_argument("--verify-corpus", help="directory of graph files")
    p.add_argument("--verify-upto", type=int,
                   help="verify on all graphs up to this many vertices")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    p = sub.add_parser("verify-monotone",
                       help="check the star-coloring subgraph transduction")
    p.add_argument("graph")
    p.add_argument("subgraph")
    p.add_argument("--max-colors", type=int, default=None)

    p = sub.add_parser("pattern", help="search for model-theoretic patterns")
    p.add_argument("kind", choices=("half-graph", "order", "independence"))
    p.add_argument("graph")
    p.add_argument("formula")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--distinct", action="store_true")

    return parser


_HANDLERS = {
    "generate": _cmd_generate,
    "eval": _cmd_eval,
    "apply": _cmd_apply,
    "witness": _cmd_witness,
    "invariant": _cmd_invariant,
    "normal-form": _cmd_normal_form,
    "verify-monotone": _cmd_verify_monotone,
    "pattern": _cmd_pattern,
}


def run(argv, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    config = ExperimentConfig(
        command=args.command,
        inputs=tuple(v for v in vars(args).values() if isinstance(v, str)),
        budget=getattr(args, "budget", DEFAULT_BUDGET),
        cap=getattr(args, "cap", DEFAULT_CAP),
        fmt=getattr(args, "format", "table"),
        seed=args.seed,
        iso=getattr(args, "iso", False),
    )
    if config.budget <= 0 or config.cap <= 0:
        out.write("error: budgets must be positive\n")
        return 2
    try:
        return _HANDLERS[args.command](args, config, out)
    except NoStarColoringError as exc:
        out.write(f"FAIL {exc}\nWITNESS: none\n")
        return 1
    except (BudgetExceededError, SizeLimitError) as exc:
        out.write(f"error: {exc}\n")
        return 3
    except (FormulaSyntaxError, UnboundVariableError,
            FotransError, ValueError, OSError, KeyError, IndexError) as exc:
        out.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
