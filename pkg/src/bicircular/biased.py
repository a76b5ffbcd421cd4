"""Biased graphs, frame matroids and quasi-graphic matroids.

A biased graph is a multigraph together with a family of "balanced" cycles
closed under the theta property. Cycles are edge sets; internally they are
bitmasks over the host graph's edge index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInput
from .matroid import AxiomViolation, CircuitMatroid
from .multigraph import (
    MultiGraph,
    _bicycle_kind_mask,
    _bicycle_masks,
    _cycle_masks_cached,
    _is_cycle_mask,
    _mask_components,
    _vmask,
    check_subset,
    contract_edge,
    iter_bits,
    popcount,
    sort_key,
    sorted_tokens,
)

INDEPENDANT = "independant"
DEPENDANT = "dependant"


def _set_key(s):
    return (len(s), [sort_key(x) for x in sorted_tokens(s)])


def _is_path_mask(G: MultiGraph, mask: int) -> bool:
    """Nonempty, connected, acyclic and of maximum degree two."""
    if not mask:
        return False
    comps = _mask_components(G, mask)
    if len(comps) != 1:
        return False
    em, vm = comps[0]
    if popcount(em) != popcount(vm) - 1:
        return False
    deg = {}
    for i in iter_bits(mask):
        for v in G._ends_idx[i]:
            deg[v] = deg.get(v, 0) + 1
    return max(deg.values()) <= 2


def theta_triples(G: MultiGraph) -> list[tuple[int, int, int]]:
    """Triples of cycle masks forming the three cycles of a theta subgraph."""
    cached = G.__dict__.get("_thetas")
    if cached is not None:
        return cached
    cyc = [c for c in _cycle_masks_cached(G) if popcount(c) > 1]
    cset = set(cyc)
    out = set()
    for a, b in itertools.combinations(cyc, 2):
        inter = a & b
        if inter and _is_path_mask(G, inter) and (a ^ b) in cset:
            out.add(tuple(sorted((a, b, a ^ b))))
    out = sorted(out)
    G.__dict__["_thetas"] = out
    return out


@dataclass(frozen=True)
class ThetaCheck:
    ok: bool
    # two balanced cycles whose theta's third cycle is missing
    counterexample: tuple | None = None

    def __bool__(self):
        return self.ok


def _balanced_masks(G: MultiGraph, balanced) -> frozenset:
    out = set()
    for C in balanced:
        m = G.mask(check_subset(G, C))
        if not _is_cycle_mask(G, m):
            raise InvalidInput(f"balanced set {sorted_tokens(C)} is not a cycle")
        out.add(m)
    return frozenset(out)


def _theta_failure(G: MultiGraph, bmasks) -> tuple | None:
    for t in theta_triples(G):
        inside = [c for c in t if c in bmasks]
        if len(inside) == 2:
            missing = next(c for c in t if c not in bmasks)
            return (G.unmask(inside[0]), G.unmask(inside[1]), G.unmask(missing))
    return None


def check_theta_property(G: MultiGraph, balanced) -> ThetaCheck:
    """Whenever two balanced cycles meet in a non-trivial path and their
    symmetric difference is a cycle, that cycle is balanced too."""
    bad = _theta_failure(G, _balanced_masks(G, balanced))
    return ThetaCheck(bad is None, bad)


class BiasedGraph:
    """A multigraph with a theta-closed family of balanced cycles."""

    __slots__ = ("graph", "_bmasks", "__dict__")

    def __init__(self, graph: MultiGraph, balanced=(), *, check: bool = True):
        self.graph = graph
        self._bmasks = _balanced_masks(graph, balanced)
        if check:
            bad = _theta_failure(graph, self._bmasks)
            if bad is not None:
                raise InvalidInput(
                    f"theta property fails: {sorted_tokens(bad[0])} and {sorted_tokens(bad[1])} balanced "
                    f"but {sorted_tokens(bad[2])} is not")

    @classmethod
    def _from_masks(cls, graph, masks):
        self = object.__new__(cls)
        self.graph = graph
        self._bmasks = frozenset(masks)
        return self

    @property
    def balanced(self) -> list[frozenset]:
        return sorted((self.graph.unmask(m) for m in self._bmasks), key=_set_key)

    def is_balanced(self, C) -> bool:
        return self.graph.mask(C) in self._bmasks

    def unbalanced_cycles(self) -> list[frozenset]:
        return [self.graph.unmask(c) for c in _cycle_masks_cached(self.graph) if c not in self._bmasks]

    def __eq__(self, other):
        if not isinstance(other, BiasedGraph):
            return NotImplemented
        return self.graph == other.graph and set(self.balanced) == set(other.balanced)

    def __hash__(self):
        return hash((self.graph, frozenset(self.graph.unmask(m) for m in self._bmasks)))

    def __repr__(self):
        return f"BiasedGraph({self.graph!r}, balanced={[sorted_tokens(c) for c in self.balanced]})"

    def delete(self, e) -> BiasedGraph:
        return biased_minor(self, "delete", e)

    def contract(self, e) -> BiasedGraph:
        return biased_minor(self, "contract", e)


def _contains_balanced(mask: int, bmasks) -> bool:
    return any(b & ~mask == 0 for b in bmasks)


def frame_matroid(G: MultiGraph | BiasedGraph, balanced=None, *, validate: bool = False) -> CircuitMatroid:
    """Circuits: balanced cycles, and bicycles containing no balanced cycle."""
    if isinstance(G, BiasedGraph):
        BG = G
    else:
        BG = BiasedGraph(G, balanced or ())
    g, bm = BG.graph, BG._bmasks
    circuits = [g.unmask(m) for m in bm]
    circuits += [g.unmask(b) for b in _bicycle_masks(g) if not _contains_balanced(b, bm)]
    return CircuitMatroid(g.labels, circuits, validate=validate)


def cycle_matroid(G: MultiGraph) -> CircuitMatroid:
    return CircuitMatroid(G.labels, [G.unmask(c) for c in _cycle_masks_cached(G)], validate=False)


# ---------------------------------------------------------------------------
# minors
# ---------------------------------------------------------------------------

def biased_minor(BG: BiasedGraph, operation: str, e) -> BiasedGraph:
    """Delete or contract ``e``.

    Contracting a balanced loop deletes it. Contracting a link contracts it in
    the graph; a cycle of the result is balanced when its preimage (the cycle
    itself, or the cycle plus ``e``) was. Contracting an unbalanced loop at u
    deletes it, turns every other link at u into a loop at its far end,
    removes u if isolated, and makes the remaining loops at u balanced.
    """
    G = BG.graph
    G.ends(e)
    ei = G._edge_index[e]
    bit = 1 << ei
    bm = BG._bmasks
    if operation == "delete" or (operation == "contract" and G.is_loop(e) and bit in bm):
        H = G.edge_deleted({e})
        return BiasedGraph._from_masks(H, [H.mask(G.unmask(c)) for c in bm if not c & bit])
    if operation != "contract":
        raise InvalidInput(f"unknown minor operation {operation!r}")
    if not G.is_loop(e):
        H = contract_edge(G, e)
        new = []
        for c in bm:
            m = H.mask(G.unmask(c & ~bit))
            if c & bit:
                new.append(m)
            elif _is_cycle_mask(H, m):
                new.append(m)
        return BiasedGraph._from_masks(H, new)
    u = G.ends(e)[0]
    d = {}
    for f, (a, b) in G.edges.items():
        if f == e:
            continue
        if a == u and b != u:
            d[f] = (b, b)
        elif b == u and a != u:
            d[f] = (a, a)
        else:
            d[f] = (a, b)
    loops_u = [f for f in G.loops(at=u) if f != e]
    verts = [v for v in G.vertices if v != u or loops_u]
    H = MultiGraph(d, verts)
    uidx = G._vertex_index[u]
    new = [H.mask(G.unmask(c)) for c in bm if not (_vmask(G, c) >> uidx) & 1]
    new += [H.mask({f}) for f in loops_u]
    return BiasedGraph._from_masks(H, set(new))


# ---------------------------------------------------------------------------
# bracelets and quasi-graphic matroids
# ---------------------------------------------------------------------------

def bracelet(c1, c2) -> frozenset:
    return frozenset((frozenset(c1), frozenset(c2)))


def _bracelet_masks(BG: BiasedGraph) -> list[tuple[int, int]]:
    g = BG.graph
    unb = [c for c in _cycle_masks_cached(g) if c not in BG._bmasks]
    vms = {c: _vmask(g, c) for c in unb}
    return [(a, b) for a, b in itertools.combinations(unb, 2) if not vms[a] & vms[b]]


def bracelets(BG: BiasedGraph) -> list[frozenset]:
    """Pairs of vertex-disjoint unbalanced cycles."""
    g = BG.graph
    return [bracelet(g.unmask(a), g.unmask(b)) for a, b in _bracelet_masks(BG)]


def _cyclomatic(G: MultiGraph, mask: int) -> int:
    return popcount(mask) - popcount(_vmask(G, mask)) + len(_mask_components(G, mask))


def bracelet_graph(BG: BiasedGraph) -> dict:
    """Adjacency map: two bracelets are adjacent when the union of their four
    cycles has |E| - |V| + c = 3."""
    g = BG.graph
    br = _bracelet_masks(BG)
    adj = {bracelet(g.unmask(a), g.unmask(b)): set() for a, b in br}
    keys = list(adj)
    for i, j in itertools.combinations(range(len(br)), 2):
        u = br[i][0] | br[i][1] | br[j][0] | br[j][1]
        if _cyclomatic(g, u) == 3:
            adj[keys[i]].add(keys[j])
            adj[keys[j]].add(keys[i])
    return adj


def bracelet_components(BG: BiasedGraph) -> list[list[frozenset]]:
    adj = bracelet_graph(BG)
    seen = set()
    out = []
    for b in adj:
        if b in seen:
            continue
        comp = []
        stack = [b]
        seen.add(b)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        out.append(comp)
    return out


class BraceletFunction:
    """Assignment of independant/dependant to bracelets.

    Any assignment can be stored; ``is_proper`` tests constancy on the
    components of the bracelet graph.
    """

    def __init__(self, assignment=None):
        self.assignment = {}
        for k, v in (assignment or {}).items():
            if v not in (INDEPENDANT, DEPENDANT):
                raise InvalidInput(f"bracelet value must be {INDEPENDANT!r} or {DEPENDANT!r}, got {v!r}")
            if len(k) != 2:
                raise InvalidInput("a bracelet is a pair of cycles")
            self.assignment[bracelet(*k)] = v

    @classmethod
    def constant(cls, BG: BiasedGraph, value: str = INDEPENDANT) -> BraceletFunction:
        return cls({b: value for b in bracelets(BG)})

    @classmethod
    def with_dependant(cls, BG: BiasedGraph, dependant) -> BraceletFunction:
        dep = {bracelet(*b) for b in dependant}
        return cls({b: DEPENDANT if b in dep else INDEPENDANT for b in bracelets(BG)})

    def __call__(self, b) -> str:
        return self.assignment[bracelet(*b)]

    def dependant(self) -> list[frozenset]:
        return [b for b, v in self.assignment.items() if v == DEPENDANT]

    def __eq__(self, other):
        return isinstance(other, BraceletFunction) and self.assignment == other.assignment

    def __repr__(self):
        return f"BraceletFunction(dependant={len(self.dependant())}, total={len(self.assignment)})"

    def is_proper(self, BG: BiasedGraph) -> bool:
        return proper_violation(BG, self) is None


def _check_total(BG: BiasedGraph, chi: BraceletFunction):
    missing = [b for b in bracelets(BG) if b not in chi.assignment]
    if missing:
        raise InvalidInput(f"bracelet function is undefined on {len(missing)} bracelet(s)")


def proper_violation(BG: BiasedGraph, chi: BraceletFunction):
    """Two adjacent bracelets with different values, or None."""
    _check_total(BG, chi)
    adj = bracelet_graph(BG)
    for b, nbrs in adj.items():
        for c in nbrs:
            if chi.assignment[b] != chi.assignment[c]:
                return (b, c)
    return None


def is_proper(BG: BiasedGraph, chi: BraceletFunction) -> bool:
    return proper_violation(BG, chi) is None


def _bicycle_cycles(G: MultiGraph) -> dict:
    """For each bicycle mask, the cycle masks it contains."""
    cached = G.__dict__.get("_bicyc")
    if cached is None:
        cyc = _cycle_masks_cached(G)
        cached = {b: tuple(c for c in cyc if c & ~b == 0) for b in _bicycle_masks(G)}
        G.__dict__["_bicyc"] = cached
    return cached


def quasigraphic_circuits(BG: BiasedGraph, chi: BraceletFunction) -> list[frozenset]:
    """Balanced cycles, thetas and tight handcuffs with no balanced cycle,
    dependant bracelets, and loose handcuffs around independant bracelets."""
    _check_total(BG, chi)
    g, bm = BG.graph, BG._bmasks
    out = [g.unmask(m) for m in bm]
    for b, cyc in _bicycle_cycles(g).items():
        if any(c in bm for c in cyc):
            continue
        kind = _bicycle_kind_mask(g, b)
        if kind != "loose_handcuffs":
            out.append(g.unmask(b))
        else:
            key = bracelet(g.unmask(cyc[0]), g.unmask(cyc[1]))
            if chi.assignment[key] == INDEPENDANT:
                out.append(g.unmask(b))
    for key in sorted(chi.dependant(), key=lambda k: sorted(_set_key(c) for c in k)):
        out.append(frozenset().union(*key))
    return out


@dataclass(frozen=True)
class QuasigraphicResult:
    matroid: CircuitMatroid | None
    # failed circuit axiom when the family is not a matroid
    rejection: AxiomViolation | None = None

    @property
    def accepted(self) -> bool:
        return self.matroid is not None


def quasigraphic_matroid(BG: BiasedGraph, chi: BraceletFunction | None = None) -> QuasigraphicResult:
    if chi is None:
        chi = BraceletFunction.constant(BG)
    M = CircuitMatroid(BG.graph.labels, quasigraphic_circuits(BG, chi), validate=False)
    bad = M.axiom_violation(cap=64)
    if bad is not None:
        return QuasigraphicResult(None, bad)
    return QuasigraphicResult(M)


def biased_graph_of_framework(M: CircuitMatroid, G: MultiGraph) -> BiasedGraph:
    """Balanced cycles are the cycles of G that are circuits of M."""
    _same_ground(M, G)
    circ = M.circuits
    return BiasedGraph._from_masks(G, [c for c in _cycle_masks_cached(G) if G.unmask(c) in circ])


def bracelet_function_from_matroid(M: CircuitMatroid, G: MultiGraph) -> tuple[BiasedGraph, BraceletFunction]:
    """A bracelet is dependant exactly when it is a circuit of M."""
    BG = biased_graph_of_framework(M, G)
    circ = M.circuits
    chi = BraceletFunction({b: DEPENDANT if frozenset().union(*b) in circ else INDEPENDANT
                            for b in bracelets(BG)})
    return BG, chi


# ---------------------------------------------------------------------------
# frameworks
# ---------------------------------------------------------------------------

def _same_ground(M: CircuitMatroid, G: MultiGraph):
    if set(M.ground) != set(G.labels):
        raise InvalidInput("edge set of the graph must equal the ground set of the matroid")


@dataclass
class FrameworkReport:
    component_rank: bool
    star_closure: bool
    circuit_components: bool
    # clause -> witness of its first failure
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.component_rank and self.star_closure and self.circuit_components

    def __bool__(self):
        return self.passed


def is_framework(M: CircuitMatroid, G: MultiGraph) -> FrameworkReport:
    """Check the three framework clauses:
    (i) each component's edge set has rank at most its number of vertices;
    (ii) for each vertex v, the closure of E(G - v) misses every link at v;
    (iii) no circuit induces a subgraph with more than two components.
    """
    _same_ground(M, G)
    witnesses = {}
    ok1 = True
    for em, vm in _mask_components(G, G.full_mask):
        edges = G.unmask(em)
        if M.rank(edges) > popcount(vm):
            ok1 = False
            witnesses.setdefault("i", edges)
    ok2 = True
    for v in G.vertices:
        rest = [e for e in G.labels if v not in G.ends(e)]
        cl = M.closure(rest)
        hit = [e for e in G.star(v) if e in cl]
        if hit:
            ok2 = False
            witnesses.setdefault("ii", (v, frozenset(hit)))
    ok3 = True
    for c in sorted(M.circuit_masks):
        C = M.unmask(c)
        if len(_mask_components(G, G.mask(C))) > 2:
            ok3 = False
            witnesses.setdefault("iii", C)
    return FrameworkReport(ok1, ok2, ok3, witnesses)


# ---------------------------------------------------------------------------
# enumeration helpers
# ---------------------------------------------------------------------------

def balanced_families(G: MultiGraph) -> list[BiasedGraph]:
    """Every theta-closed family of balanced cycles on G, by backtracking
    over cycles in mask order (no theta may have exactly two balanced cycles)."""
    cyc = list(_cycle_masks_cached(G))
    by = {c: [] for c in cyc}
    for t in theta_triples(G):
        for c in t:
            by[c].append(t)
    state = {}
    out = []

    def ok(c):
        for t in by[c]:
            if all(x in state for x in t) and sum(state[x] for x in t) == 2:
                return False
        return True

    def bt(i):
        if i == len(cyc):
            out.append(BiasedGraph._from_masks(G, [c for c in cyc if state[c]]))
            return
        for v in (False, True):
            state[cyc[i]] = v
            if ok(cyc[i]):
                bt(i + 1)
            del state[cyc[i]]

    bt(0)
    return out


def _literal_table(lit, var):
    if lit is None:
        return None
    j, dep = lit
    return var[j] if dep else ~var[j]


def quasigraphic_acceptance_table(BG: BiasedGraph):
    """Decide acceptance for every bracelet function at once.

    Returns (bracelet list, boolean array) where entry ``x`` tells whether the
    family built from the function making bracelet ``j`` dependant iff bit
    ``j`` of ``x`` is set satisfies the circuit axioms. Each candidate set
    carries a literal (always present, present iff its bracelet is
    dependant, or present iff independant); circuit elimination and
    incomparability then become clauses evaluated over all assignments.
    """
    g, bm = BG.graph, BG._bmasks
    br = _bracelet_masks(BG)
    k = len(br)
    index = {frozenset(p): j for j, p in enumerate(br)}
    cands = [(m, None) for m in bm]
    for b, cyc in _bicycle_cycles(g).items():
        if any(c in bm for c in cyc):
            continue
        if _bicycle_kind_mask(g, b) != "loose_handcuffs":
            cands.append((b, None))
        else:
            cands.append((b, (index[frozenset(cyc)], False)))
    for j, (a, b) in enumerate(br):
        cands.append((a | b, (j, True)))

    clauses = set()
    for (ma, la), (mb, lb) in itertools.combinations(cands, 2):
        if la is not None and lb is not None and la[0] == lb[0] and la[1] != lb[1]:
            continue
        neg = frozenset(x for x in (la, lb) if x is not None)
        if ma & ~mb == 0 or mb & ~ma == 0:
            clauses.add((neg, frozenset()))
            continue
        inter = ma & mb
        for i in iter_bits(inter):
            u = (ma | mb) & ~(1 << i)
            pos = set()
            always = False
            for mc, lc in cands:
                if mc & ~u == 0:
                    if lc is None:
                        always = True
                        break
                    pos.add(lc)
            if always:
                continue
            if any((j, not d) in pos for j, d in neg):
                continue
            clauses.add((neg, frozenset(pos)))

    idx = np.arange(1 << k, dtype=np.int64)
    var = [((idx >> j) & 1).astype(bool) for j in range(k)]
    ok = np.ones(1 << k, dtype=bool)
    for neg, pos in clauses:
        c = np.zeros(1 << k, dtype=bool)
        for lit in neg:
            c |= ~_literal_table(lit, var)
        for lit in pos:
            c |= _literal_table(lit, var)
        ok &= c
    keys = [bracelet(g.unmask(a), g.unmask(b)) for a, b in br]
    return keys, ok


def proper_table(BG: BiasedGraph):
    """(bracelet list, boolean array): which assignments are constant on
    every bracelet-graph component."""
    g = BG.graph
    br = _bracelet_masks(BG)
    k = len(br)
    keys = [bracelet(g.unmask(a), g.unmask(b)) for a, b in br]
    pos = {b: j for j, b in enumerate(keys)}
    adj = bracelet_graph(BG)
    idx = np.arange(1 << k, dtype=np.int64)
    ok = np.ones(1 << k, dtype=bool)
    for b, nbrs in adj.items():
        for c in nbrs:
            i, j = pos[b], pos[c]
            if i < j:
                ok &= ((idx >> i) & 1) == ((idx >> j) & 1)
    return keys, ok


def bracelet_function_from_bits(keys, x: int) -> BraceletFunction:
    return BraceletFunction({b: DEPENDANT if (x >> j) & 1 else INDEPENDANT for j, b in enumerate(keys)})
