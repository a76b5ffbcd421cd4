"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 resource limit.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .biased import frame_matroid, is_framework, quasigraphic_matroid
from .bicircular import bicircular_matroid, representation_closure
from .catalog import Catalog
from .decide import element_bound, is_bicircular, matroid_type, rank_bound, verify_excluded_minor
from .errors import BicircularError, InvalidInput, InvalidOperation, NotFound, ParseError, ResourceLimit
from .formats import (GraphDocument, dumps, emit_graph, emit_matroid, graph_to_json, load, load_graph,
                      load_matroid, matroid_to_json, token)
from .multigraph import enumerate_bicycles, sorted_tokens

CAP_ENV = "BICIRCULAR_CAP"
EXIT_OK, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return 12
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def _matroid_of(obj):
    """The matroid a file describes: matroid files as written; graph files by
    their biased structure (balanced loops only: bicircular; other balanced
    cycles: frame; dependant bracelets: quasi-graphic)."""
    if not isinstance(obj, GraphDocument):
        return obj
    if obj.dependant:
        res = quasigraphic_matroid(obj.biased(), obj.bracelet_function())
        if not res.accepted:
            raise InvalidInput(f"bracelet function does not give a matroid: {res.rejection}")
        return res.matroid
    if all(len(C) == 1 for C in obj.balanced_cycles):
        return bicircular_matroid(obj.loop_biased())
    return frame_matroid(obj.biased())


def _circuit_list(M):
    return [list(c) for c in M.sorted_circuits()]


class Output:
    def __init__(self, structured: bool):
        self.structured = structured
        self.lines = []

    def line(self, text=""):
        self.lines.append(str(text))

    def block(self, text: str):
        self.lines.append(text.rstrip("\n"))

    def emit(self, data: dict | list | None = None):
        if self.structured:
            sys.stdout.write(dumps(data))
        else:
            sys.stdout.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _jsonable(x):
    if isinstance(x, (set, frozenset)):
        return sorted_tokens(_jsonable(y) for y in x) if all(not isinstance(y, (set, frozenset)) for y in x) \
            else [_jsonable(y) for y in x]
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return x


def _stats_line(stats: dict) -> str:
    return " ".join(f"{k}={stats[k]}" for k in sorted(stats))


# -- verbs -------------------------------------------------------------------

def cmd_circuits(args, out):
    obj = load(args.file)
    M = _matroid_of(obj)
    data = {"ground": list(M.ground), "circuits": _circuit_list(M)}
    if isinstance(obj, GraphDocument) and not args.plain:
        kinds = {frozenset(X): kind for X, kind in enumerate_bicycles(obj.graph)}
        data["kinds"] = [kinds.get(frozenset(c), "balanced-cycle" if len(c) > 1 else "balanced-loop")
                         for c in data["circuits"]]
    if args.validate:
        bad = M.axiom_violation(cap=args.cap, seed=args.seed)
        data["axioms"] = "ok" if bad is None else str(bad)
    for i, c in enumerate(data["circuits"]):
        suffix = f"  ({data['kinds'][i]})" if "kinds" in data else ""
        out.line(" ".join(map(str, c)) + suffix)
    if args.validate:
        out.line(f"axioms: {data['axioms']}")
    return data


def _parse_subset(raw: str | None):
    if raw is None:
        return None
    return [token(x) for x in raw.replace(",", " ").split()]


def cmd_rank(args, out):
    M = _matroid_of(load(args.file))
    X = _parse_subset(args.subset)
    r = M.rank(X)
    out.line(str(r))
    data = {"rank": r}
    if X is not None:
        data["subset"] = sorted_tokens(X)
    return data


def _load_for_decide(args):
    M = _matroid_of(load(args.file))
    if M.size > args.cap:
        raise ResourceLimit(f"{M.size} elements exceeds cap {args.cap}")
    return M


def cmd_decide(args, out):
    M = _load_for_decide(args)
    rep = is_bicircular(M, cap=args.cap, workers=args.workers, max_nodes=args.max_nodes,
                        vertex_cap=args.vertex_cap)
    data = {"answer": rep.answer, "exhaustive": rep.exhaustive, "stats": rep.stats}
    out.line(rep.answer)
    out.line(f"exhaustive: {'yes' if rep.exhaustive else 'no'}")
    out.line(f"stats: {_stats_line(rep.stats)}")
    if rep.witness is not None:
        text = emit_graph(rep.witness)
        data["witness"] = graph_to_json(rep.witness)
        out.line("witness:")
        out.block(text)
        if args.witness_out:
            Path(args.witness_out).write_text(text, encoding="utf-8")
    return data


def cmd_verify_xm(args, out):
    M = _load_for_decide(args)
    rep = verify_excluded_minor(M, cap=args.cap, workers=args.workers, max_nodes=args.max_nodes,
                                use_prunes=not args.no_prunes)
    checks = [{"element": e, "operation": op, "answer": r.answer} for (e, op), r in rep.minor_checks.items()]
    data = {"verdict": rep.verdict, "excluded_minor": rep.is_excluded_minor, "exhaustive": rep.exhaustive,
            "non_bicircular": rep.non_bicircular.answer == "no", "pruned_by": rep.pruned_by,
            "minor_checks": checks}
    out.line(rep.verdict)
    if rep.pruned_by:
        out.line(f"pruned: {rep.pruned_by}")
    out.line(f"bicircular: {rep.non_bicircular.answer}")
    for c in checks:
        out.line(f"{c['operation']} {c['element']}: {c['answer']}")
    return data


def cmd_equiv(args, out):
    doc = load_graph(args.file)
    graphs = representation_closure(doc.graph, cap_vertices=args.vertex_cap, max_graphs=args.max_graphs)
    texts = [emit_graph(G) for G in graphs]
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for i, t in enumerate(texts, start=1):
            (d / f"graph-{i:04d}.graph").write_text(t, encoding="utf-8")
    out.line(f"# {len(graphs)} representation(s)")
    for i, t in enumerate(texts, start=1):
        out.line(f"# graph {i}")
        out.block(t)
    return {"count": len(graphs), "graphs": [graph_to_json(G) for G in graphs]}


def cmd_bound(args, out):
    if args.max_rank:
        out.line(str(rank_bound()))
        return {"rank_bound": rank_bound()}
    if args.rank is None:
        raise UsageError("bound needs a rank or --max-rank")
    b = element_bound(args.rank)
    out.line(str(b))
    return {"rank": args.rank, "element_bound": b}


def cmd_type(args, out):
    M = _load_for_decide(args)
    t = matroid_type(M, vertex_cap=args.vertex_cap, max_graphs=args.max_graphs)
    out.line(str(t))
    return {"type": t}


def cmd_framework_check(args, out):
    M = load_matroid(args.matroid)
    doc = load_graph(args.graph)
    rep = is_framework(M, doc.graph)
    data = {"passed": rep.passed, "component_rank": rep.component_rank, "star_closure": rep.star_closure,
            "circuit_components": rep.circuit_components,
            "witnesses": {k: _jsonable(v) for k, v in sorted(rep.witnesses.items())}}
    out.line("framework" if rep.passed else "not a framework")
    for k in ("component_rank", "star_closure", "circuit_components"):
        out.line(f"{k}: {'ok' if data[k] else 'fails'}")
    for k, v in data["witnesses"].items():
        out.line(f"witness {k}: {v}")
    return data


def cmd_catalog(args, out):
    cat = Catalog(args.dir)
    if args.action == "list":
        rows = []
        for n in cat.names(include_missing=True):
            available = n in cat.names()
            rows.append({"name": n, "available": available, "note": cat.spec(n).get("note", "")})
            out.line(f"{n}\t{'available' if available else 'missing data'}\t{rows[-1]['note']}")
        return {"entries": rows}
    if args.action == "show":
        if not args.names:
            raise UsageError("catalog show needs a name")
        entry = cat.get(args.names[0])
        out.block(emit_matroid(entry.matroid))
        return {"name": entry.name, "matroid": matroid_to_json(entry.matroid)}
    names = args.names or cat.names()
    results = []
    failed = False
    for n in names:
        res = cat.validate(n, check_excluded_minor=not args.skip_xm)
        failed |= not res.ok
        results.append({"name": n, "ok": res.ok, "problems": res.problems})
        out.line(f"{n}: {'ok' if res.ok else 'FAILED'}")
        for p in res.problems:
            out.line(f"  {p}")
    return {"results": results, "_exit": EXIT_USAGE if failed else EXIT_OK}


# -- wiring ------------------------------------------------------------------

def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("human", "structured"), default="human")
    common.add_argument("--cap", type=int, default=None, help="element cap (default 12 or $BICIRCULAR_CAP)")
    common.add_argument("--vertex-cap", type=int, default=10)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-nodes", type=int, default=None, help="search node budget")
    common.add_argument("--max-graphs", type=int, default=5000)

    p = _Parser(prog="bicircular", description="Bicircular and frame matroid tools.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("circuits", parents=[common], help="list circuits of a graph or matroid file")
    s.add_argument("file")
    s.add_argument("--plain", action="store_true", help="omit bicycle shapes")
    s.add_argument("--validate", action="store_true", help="also check the circuit axioms")
    s.set_defaults(func=cmd_circuits)

    s = sub.add_parser("rank", parents=[common], help="rank of the matroid or of a subset")
    s.add_argument("file")
    s.add_argument("--subset", help="comma or space separated labels")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("decide", parents=[common], help="is the matroid bicircular")
    s.add_argument("file")
    s.add_argument("--witness-out", help="write the witness graph file here")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("verify-xm", parents=[common], help="is the matroid an excluded minor")
    s.add_argument("file")
    s.add_argument("--no-prunes", action="store_true", help="skip the structural shortcuts")
    s.set_defaults(func=cmd_verify_xm)

    s = sub.add_parser("equiv", parents=[common], help="representation closure of a graph")
    s.add_argument("file")
    s.add_argument("--out-dir", help="write one graph file per representation")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("bound", parents=[common], help="element bound for a rank")
    s.add_argument("rank", type=int, nargs="?")
    s.add_argument("--max-rank", action="store_true", help="print the rank bound instead")
    s.set_defaults(func=cmd_bound)

    s = sub.add_parser("type", parents=[common], help="representation type 1, 2 or 3")
    s.add_argument("file")
    s.set_defaults(func=cmd_type)

    s = sub.add_parser("framework-check", parents=[common], help="is a graph a framework for a matroid")
    s.add_argument("matroid")
    s.add_argument("graph")
    s.set_defaults(func=cmd_framework_check)

    s = sub.add_parser("catalog", parents=[common], help="list, show or validate catalog entries")
    s.add_argument("action", choices=("list", "show", "validate"))
    s.add_argument("names", nargs="*")
    s.add_argument("--dir", default=None, help="catalog directory (default: bundled)")
    s.add_argument("--skip-xm", action="store_true", help="skip excluded-minor checks")
    s.set_defaults(func=cmd_catalog)
    return p


def run(argv=None) -> int:
    structured = False
    try:
        args = build_parser().parse_args(argv)
        structured = args.format == "structured"
        if args.cap is None:
            args.cap = _default_cap()
        if args.workers < 1:
            raise UsageError("--workers must be at least 1")
        out = Output(structured)
        data = args.func(args, out)
        code = data.pop("_exit", EXIT_OK) if isinstance(data, dict) else EXIT_OK
        out.emit(data)
        return code
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except ResourceLimit as exc:
        if structured:
            sys.stdout.write(dumps({"error": "resource-limit", "exhaustive": False, "message": str(exc)}))
        else:
            sys.stdout.write(f"RESOURCE LIMIT (non-exhaustive): {exc}\n")
        return EXIT_LIMIT
    except (ParseError, InvalidInput, InvalidOperation, NotFound) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except BicircularError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
