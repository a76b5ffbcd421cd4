"""Text and JSON file formats for graphs, biased graphs and matroids.

Graph files hold ``vertex``, ``edge``, ``loop``, ``balanced-loop``,
``balanced`` and ``bracelet dependant`` directives; matroid files hold one
``ground`` line and any number of ``circuit`` lines. ``#`` starts a comment.
Tokens made of decimal digits are read as integers. Emission sorts every
list, so parse followed by emit is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .biased import BiasedGraph, BraceletFunction
from .bicircular import LoopBiasedGraph
from .errors import InvalidInput, ParseError
from .matroid import CircuitMatroid
from .multigraph import MultiGraph, sort_key, sorted_tokens

GRAPH_DIRECTIVES = ("vertex", "edge", "loop", "balanced-loop", "balanced", "bracelet")
MATROID_DIRECTIVES = ("ground", "circuit")


def token(s: str):
    return int(s) if s.isdigit() else s


def _fmt(x) -> str:
    return str(x)


def _set_key(s):
    return (len(s), [sort_key(x) for x in sorted_tokens(s)])


@dataclass
class GraphDocument:
    """Everything a graph file can say: the graph, balanced cycles (loops
    included) and the bracelets declared dependant."""

    graph: MultiGraph
    balanced_cycles: list = field(default_factory=list)
    dependant: list = field(default_factory=list)

    @property
    def balanced_loops(self) -> frozenset:
        return frozenset(e for C in self.balanced_cycles if len(C) == 1 for e in C)

    def loop_biased(self) -> LoopBiasedGraph:
        if any(len(C) != 1 for C in self.balanced_cycles):
            raise InvalidInput("document has balanced cycles that are not loops")
        return LoopBiasedGraph(self.graph, self.balanced_loops)

    def biased(self, check: bool = True) -> BiasedGraph:
        return BiasedGraph(self.graph, self.balanced_cycles, check=check)

    def bracelet_function(self, BG: BiasedGraph | None = None) -> BraceletFunction:
        BG = self.biased() if BG is None else BG
        return BraceletFunction.with_dependant(BG, self.dependant)


# -- parsing -----------------------------------------------------------------

def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def _is_json(text: str) -> bool:
    return text.lstrip().startswith("{")


def detect_kind(text: str) -> str:
    """'matroid' or 'graph'."""
    if _is_json(text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        return "matroid" if isinstance(data, dict) and "ground" in data else "graph"
    for _, words in _lines(text):
        return "matroid" if words[0] in MATROID_DIRECTIVES else "graph"
    return "graph"


def parse_graph(text: str, source=None) -> GraphDocument:
    if _is_json(text):
        return _graph_from_json(text, source)
    edges = {}
    vertices = []
    balanced = []
    bracelets = []
    for n, words in _lines(text):
        kind, args = words[0], [token(w) for w in words[1:]]
        if kind == "vertex":
            if len(args) != 1:
                raise ParseError("vertex takes one id", n, source)
            vertices.append(args[0])
        elif kind in ("edge", "loop"):
            want = 3 if kind == "edge" else 2
            if len(args) != want:
                raise ParseError(f"{kind} takes {want} fields", n, source)
            if args[0] in edges:
                raise ParseError(f"duplicate edge label {args[0]!r}", n, source)
            edges[args[0]] = tuple(args[1:]) if kind == "edge" else (args[1], args[1])
        elif kind == "balanced-loop":
            if len(args) != 1:
                raise ParseError("balanced-loop takes one label", n, source)
            balanced.append((n, frozenset(args)))
        elif kind == "balanced":
            if not args:
                raise ParseError("balanced needs at least one label", n, source)
            balanced.append((n, frozenset(args)))
        elif kind == "bracelet":
            if not args or args[0] != "dependant" or args.count("|") != 1:
                raise ParseError("expected 'bracelet dependant <cycle> | <cycle>'", n, source)
            cut = args.index("|")
            c1, c2 = frozenset(args[1:cut]), frozenset(args[cut + 1:])
            if not c1 or not c2:
                raise ParseError("bracelet cycles must be nonempty", n, source)
            bracelets.append((n, (c1, c2)))
        elif kind in MATROID_DIRECTIVES:
            raise ParseError(f"matroid directive {kind!r} in a graph file", n, source)
        else:
            raise ParseError(f"unknown directive {kind!r}", n, source)
    try:
        G = MultiGraph(edges, vertices)
    except InvalidInput as exc:
        raise ParseError(str(exc), None, source) from None
    for n, C in balanced:
        missing = [e for e in C if e not in G.edges]
        if missing:
            raise ParseError(f"unknown edge label(s) {sorted_tokens(missing)}", n, source)
    for n, (c1, c2) in bracelets:
        missing = [e for e in c1 | c2 if e not in G.edges]
        if missing:
            raise ParseError(f"unknown edge label(s) {sorted_tokens(missing)}", n, source)
    return GraphDocument(G, [C for _, C in balanced], [b for _, b in bracelets])


def parse_matroid(text: str, source=None, validate: bool = True) -> CircuitMatroid:
    if _is_json(text):
        return _matroid_from_json(text, source, validate)
    ground = None
    circuits = []
    for n, words in _lines(text):
        kind, args = words[0], [token(w) for w in words[1:]]
        if kind == "ground":
            if ground is not None:
                raise ParseError("repeated ground line", n, source)
            ground = args
            if len(set(ground)) != len(ground):
                raise ParseError("repeated ground element", n, source)
        elif kind == "circuit":
            if ground is None:
                raise ParseError("circuit before ground", n, source)
            if not args:
                raise ParseError("empty circuit", n, source)
            bad = [e for e in args if e not in set(ground)]
            if bad:
                raise ParseError(f"circuit element(s) {bad} not in ground set", n, source)
            circuits.append(frozenset(args))
        elif kind in GRAPH_DIRECTIVES:
            raise ParseError(f"graph directive {kind!r} in a matroid file", n, source)
        else:
            raise ParseError(f"unknown directive {kind!r}", n, source)
    if ground is None:
        raise ParseError("missing ground line", None, source)
    try:
        return CircuitMatroid(ground, circuits, validate=validate)
    except InvalidInput as exc:
        raise ParseError(str(exc), None, source) from None


def _json_tokens(items):
    return [token(x) if isinstance(x, str) else x for x in items]


def _graph_from_json(text: str, source) -> GraphDocument:
    try:
        data = json.loads(text)
        edges = {}
        for item in data.get("edges", []):
            label = _json_tokens([item["label"]])[0]
            edges[label] = tuple(_json_tokens(item["ends"]))
        G = MultiGraph(edges, _json_tokens(data.get("vertices", [])))
        balanced = [frozenset(_json_tokens(c)) for c in data.get("balanced", [])]
        balanced += [frozenset(_json_tokens([e])) for e in data.get("balanced_loops", [])]
        dep = [(frozenset(_json_tokens(a)), frozenset(_json_tokens(b)))
               for a, b in data.get("dependant_bracelets", [])]
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed graph document: {exc}", None, source) from None
    for C in balanced + [c for b in dep for c in b]:
        if any(e not in G.edges for e in C):
            raise ParseError(f"unknown edge label in {sorted_tokens(C)}", None, source)
    return GraphDocument(G, balanced, dep)


def _matroid_from_json(text: str, source, validate: bool) -> CircuitMatroid:
    try:
        data = json.loads(text)
        ground = _json_tokens(data["ground"])
        circuits = [frozenset(_json_tokens(c)) for c in data.get("circuits", [])]
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed matroid document: {exc}", None, source) from None
    try:
        return CircuitMatroid(ground, circuits, validate=validate)
    except InvalidInput as exc:
        raise ParseError(str(exc), None, source) from None


# -- emission ----------------------------------------------------------------

def _as_document(obj) -> GraphDocument:
    if isinstance(obj, GraphDocument):
        return obj
    if isinstance(obj, MultiGraph):
        return GraphDocument(obj)
    if isinstance(obj, LoopBiasedGraph):
        return GraphDocument(obj.graph, [frozenset({e}) for e in obj.balanced_loops])
    if isinstance(obj, BiasedGraph):
        return GraphDocument(obj.graph, list(obj.balanced))
    raise InvalidInput(f"cannot emit {type(obj).__name__} as a graph")


def _isolated(G: MultiGraph):
    return [v for v in G.vertices if G.degree(v) == 0]


def emit_graph(obj, chi: BraceletFunction | None = None) -> str:
    doc = _as_document(obj)
    G = doc.graph
    out = [f"vertex {_fmt(v)}" for v in _isolated(G)]
    for e in G.labels:
        u, v = G.ends(e)
        out.append(f"loop {_fmt(e)} {_fmt(u)}" if u == v else f"edge {_fmt(e)} {_fmt(u)} {_fmt(v)}")
    loops = [C for C in doc.balanced_cycles if len(C) == 1 and G.is_loop(next(iter(C)))]
    for C in sorted(loops, key=_set_key):
        out.append(f"balanced-loop {_fmt(next(iter(C)))}")
    for C in sorted((C for C in doc.balanced_cycles if C not in loops), key=_set_key):
        out.append("balanced " + " ".join(_fmt(e) for e in sorted_tokens(C)))
    dep = doc.dependant if chi is None else chi.dependant()
    for line in sorted(_bracelet_line(b) for b in dep):
        out.append(line)
    return "\n".join(out) + "\n"


def _bracelet_parts(b):
    parts = sorted((sorted_tokens(c) for c in b), key=lambda c: (len(c), [sort_key(x) for x in c]))
    return parts


def _bracelet_line(b) -> str:
    a, c = _bracelet_parts(b)
    return "bracelet dependant " + " ".join(map(_fmt, a)) + " | " + " ".join(map(_fmt, c))


def emit_matroid(M: CircuitMatroid) -> str:
    out = ["ground " + " ".join(_fmt(e) for e in M.ground)]
    out += ["circuit " + " ".join(_fmt(e) for e in c) for c in M.sorted_circuits()]
    return "\n".join(out) + "\n"


def graph_to_json(obj, chi: BraceletFunction | None = None) -> dict:
    doc = _as_document(obj)
    G = doc.graph
    loops = sorted_tokens(doc.balanced_loops)
    dep = doc.dependant if chi is None else chi.dependant()
    return {
        "vertices": list(G.vertices),
        "edges": [{"label": e, "ends": list(G.ends(e))} for e in G.labels],
        "balanced_loops": loops,
        "balanced": [sorted_tokens(C) for C in sorted(doc.balanced_cycles, key=_set_key) if len(C) > 1],
        "dependant_bracelets": sorted((_bracelet_parts(b) for b in dep), key=lambda p: _bracelet_line(p)),
    }


def matroid_to_json(M: CircuitMatroid) -> dict:
    return {"ground": list(M.ground), "circuits": [list(c) for c in M.sorted_circuits()]}


def dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True, default=str) + "\n"


# -- files -------------------------------------------------------------------

def read_text(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc.reason}", None, str(path)) from None


def load_graph(path) -> GraphDocument:
    return parse_graph(read_text(path), str(path))


def load_matroid(path, validate: bool = True) -> CircuitMatroid:
    return parse_matroid(read_text(path), str(path), validate)


def load(path):
    """A CircuitMatroid or a GraphDocument, depending on the file's content."""
    text = read_text(path)
    if detect_kind(text) == "matroid":
        return parse_matroid(text, str(path))
    return parse_graph(text, str(path))


__all__ = [
    "GraphDocument",
    "detect_kind",
    "dumps",
    "emit_graph",
    "emit_matroid",
    "graph_to_json",
    "load",
    "load_graph",
    "load_matroid",
    "matroid_to_json",
    "parse_graph",
    "parse_matroid",
]
