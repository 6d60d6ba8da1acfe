"""Command-line entry point: ``p3pack <command> [options]``.

Exit codes: 0 success, 1 a claim or lemma check failed (or no factor
exists for ``factor``), 2 usage or input error, 3 a budget ran out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .claims import ALL_CLAIMS, ClaimError, ClaimId, corpus_claim_matrix
from .connectivity import is_cubic_3_connected
from .corpus import CorpusError, corpus_up_to, generate_cubic, ingest
from .graph import GraphError, edge, graph6_decode, graph6_encode
from .lemmas import SUITES
from .packing import (
    BudgetExceeded,
    ConstraintError,
    FactorConstraint,
    enumerate_lambda_factors,
    find_lambda_factor,
    max_lambda_packing,
)
from .recipes import RecipeError, build, load_recipe

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_SKIPPED = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _read_recipe(arg: str):
    # inline JSON first; long inline recipes would overflow a path lookup
    if arg.lstrip().startswith(("{", "[", '"')):
        return load_recipe(arg)
    return load_recipe(Path(arg).read_text())


def _graphs_from_args(args) -> list:
    """Graphs named by --graph (graph6 or base name), --recipe or --input."""
    out = []
    if getattr(args, "graph", None):
        try:
            out.append(build(args.graph).graph)
        except RecipeError:
            out.append(graph6_decode(args.graph))
    if getattr(args, "recipe", None):
        out.append(build(_read_recipe(args.recipe)).graph)
    if getattr(args, "input", None):
        for rec in ingest(args.input, args.input_format):
            if rec.graph is None:
                print(f"{args.input}:{rec.line}: {rec.error}", file=sys.stderr)
            else:
                out.append(rec.graph)
    if not out:
        raise RecipeError("no input graph: give --graph, --recipe or --input")
    return out


def _parse_edges(text: str | None):
    if not text:
        return []
    out = []
    for tok in text.split(","):
        u, _, v = tok.strip().partition("-")
        out.append(edge(int(u), int(v)))
    return out


def _parse_vertices(text: str | None):
    return [int(t) for t in text.split(",")] if text else []


# commands ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    sizes = [args.n] if args.n else list(range(4, args.n_max + 1, 2))
    graphs = [G for n in sizes for G in generate_cubic(n, dedup=True, three_connected=args.three_connected)]
    if args.format == "json":
        _emit(_dump([{"n": G.n, "graph6": graph6_encode(G)} for G in graphs]), args.out)
    else:
        _emit("\n".join(graph6_encode(G) for G in graphs), args.out)
    print(f"{len(graphs)} graphs", file=sys.stderr)
    return EXIT_OK


def cmd_construct(args) -> int:
    recipe = _read_recipe(args.recipe)
    built = build(recipe)
    G = built.graph
    meta = dict(built.meta)
    meta.update({"n": G.n, "m": G.m, "cubic": G.is_cubic(), "graph6": graph6_encode(G), "recipe": recipe})
    if G.is_cubic() and G.n >= 4:
        meta["three_connected"] = is_cubic_3_connected(G)
    if args.format == "graph6":
        _emit(graph6_encode(G), args.out)
    else:
        print(graph6_encode(G))
        _emit(_dump(meta), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    rows = []
    for G in _graphs_from_args(args):
        try:
            lam, P = max_lambda_packing(G, budget_ms=args.budget_ms)
        except BudgetExceeded as exc:
            print(f"budget exhausted: {exc}", file=sys.stderr)
            return EXIT_SKIPPED
        rows.append({"graph6": graph6_encode(G), "n": G.n, "lambda": lam, "witness": P.to_json()})
    if args.format == "json":
        _emit(_dump(rows), args.out)
    else:
        _emit("\n".join(f"{r['graph6']}  n={r['n']}  lambda={r['lambda']}  witness={r['witness']}"
                        for r in rows), args.out)
    return EXIT_OK


def cmd_factor(args) -> int:
    G = _graphs_from_args(args)[0]
    c = FactorConstraint.make(removed=_parse_vertices(args.remove), forbidden=_parse_edges(args.forbid),
                              required=_parse_edges(args.require))
    try:
        if args.enum_limit:
            en = enumerate_lambda_factors(G, c, args.enum_limit, budget_ms=args.budget_ms)
            result = {"factors": [P.to_json() for P in en.factors], "exhausted": en.exhausted}
            found = bool(en.factors)
        else:
            P = find_lambda_factor(G, c, budget_ms=args.budget_ms)
            result = {"factor": None if P is None else P.to_json()}
            found = P is not None
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_SKIPPED
    result.update({"graph6": graph6_encode(G), "constraint": c.to_json()})
    _emit(_dump(result), args.out)
    return EXIT_OK if found else EXIT_FAILS


def cmd_claims(args) -> int:
    claims = ClaimId.parse(args.claims)
    if args.input or args.graph or args.recipe:
        graphs = _graphs_from_args(args)
    else:
        graphs = corpus_up_to(args.n_max, three_connected=True)
    m = corpus_claim_matrix(graphs, claims, args.budget_ms, args.workers, keep_witnesses=args.witnesses)
    _emit(_dump(m.to_json(args.witnesses)) if args.format == "json" else m.to_table(), args.out)
    if m.any_fails:
        target = Path(args.out).with_suffix(".counterexamples.json") if args.out else Path("counterexamples.json")
        target.write_text(_dump(m.counterexamples()) + "\n")
        print(f"counterexample candidates written to {target}", file=sys.stderr)
        return EXIT_FAILS
    return EXIT_SKIPPED if m.any_skipped else EXIT_OK


def cmd_lemmas(args) -> int:
    names = list(SUITES) if args.suite in (None, "all") else args.suite.split(",")
    results = []
    for name in names:
        if name not in SUITES:
            raise RecipeError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
        fn = SUITES[name]
        kwargs = {"seed": args.seed} if "seed" in fn.__code__.co_varnames else {}
        results.append(fn(**kwargs))
    if args.format == "json":
        _emit(_dump([r.to_json() for r in results]), args.out)
    else:
        _emit("\n".join(f"{r.name:<28} {'pass' if r.passed else 'FAIL'}  checked={r.checked}"
                        + (f"  failures={len(r.failures)}" if r.failures else "") for r in results), args.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILS


def cmd_report(args) -> int:
    total = {"graphs": 0, "verdicts": {}, "counterexamples": 0, "p_failures": []}
    for path in args.files:
        data = json.loads(Path(path).read_text())
        s = data["summary"]
        total["graphs"] += s["graphs"]
        for k, v in s["verdicts"].items():
            total["verdicts"][k] = total["verdicts"].get(k, 0) + v
        total["p_failures"] += s.get("p_failures", [])
        total["counterexamples"] += len(data.get("counterexamples", []))
    if args.format == "json":
        _emit(_dump(total), args.out)
    else:
        lines = [f"graphs: {total['graphs']}"]
        lines += [f"{k}: {v}" for k, v in sorted(total["verdicts"].items())]
        lines.append(f"counterexamples: {total['counterexamples']}")
        _emit("\n".join(lines), args.out)
    return EXIT_FAILS if total["counterexamples"] or total["p_failures"] else EXIT_OK


# parser -------------------------------------------------------------------------

def _positive(kind):
    def conv(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return value
    return conv


def _add_graph_inputs(p):
    p.add_argument("--graph", help="graph6 string or base graph name (K4, prism, ...)")
    p.add_argument("--recipe", help="JSON build tree, inline or a file path")
    p.add_argument("--input", help="file of graphs")
    p.add_argument("--input-format", choices=["graph6", "edgelist"], default="graph6")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="p3pack", description="3-vertex-path packing workbench for cubic graphs")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a cubic-graph corpus as graph6")
    p.add_argument("--n", type=int, help="single order")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--three-connected", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("construct", help="build a graph from a JSON recipe")
    p.add_argument("--recipe", required=True)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("solve", help="maximum Λ-packing")
    _add_graph_inputs(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("factor", help="constrained Λ-factor query")
    _add_graph_inputs(p)
    p.add_argument("--remove", help="comma list of vertices")
    p.add_argument("--forbid", help="comma list of edges u-v")
    p.add_argument("--require", help="comma list of edges u-v")
    p.add_argument("--enum-limit", type=_positive(int), help="enumerate up to this many factors")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("claims", help="claim matrix over a corpus")
    _add_graph_inputs(p)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--three-connected", action="store_true", default=True,
                   help="accepted for clarity; claim sweeps always use 3-connected graphs")
    p.add_argument("--claims", default="all", help="z1,t2,... or z/t/f or all")
    p.add_argument("--workers", type=_positive(int), default=1)
    p.add_argument("--witnesses", action="store_true", help="embed witnesses for every holding claim")
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("lemmas", help="run the structural check suites")
    p.add_argument("--suite", default="all", help=f"comma list of {', '.join(SUITES)} or all")
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("report", help="aggregate claim-matrix JSON files")
    p.add_argument("files", nargs="+")
    p.set_defaults(func=cmd_report)

    for p in sub.choices.values():
        p.add_argument("--format", choices=["json", "table", "graph6"], default="table")
        p.add_argument("--out", help="write the main output here instead of stdout")
        p.add_argument("--budget-ms", type=_positive(float), help="time budget per factor query")
        p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (RecipeError, GraphError, CorpusError, ClaimError, ConstraintError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
