"""Bicircular matroids and their graph representations.

Covers loop-biased graphs (graphs whose only balanced cycles are loops),
balloons and lines, loop-sums, and the three incidence-rewiring moves
(rolling, rotation, replacement) that connect the representations of a
connected bicircular matroid.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .biased import BiasedGraph, biased_minor
from .errors import InvalidInput, InvalidOperation, ResourceLimit
from .matroid import CircuitMatroid
from .multigraph import (
    CANONICAL_VERTEX_CAP,
    MultiGraph,
    _bicycle_masks,
    _mask_components,
    components,
    contract_edge,
    is_acyclic,
    is_connected,
    labeled_key,
    sort_key,
    sorted_tokens,
)


class LoopBiasedGraph:
    """A graph together with a set of balanced loops."""

    __slots__ = ("graph", "balanced_loops")

    def __init__(self, graph: MultiGraph, balanced_loops=()):
        bl = frozenset(balanced_loops)
        for e in bl:
            if e not in graph.edges or not graph.is_loop(e):
                raise InvalidInput(f"balanced loop {e!r} is not a loop of the graph")
        self.graph = graph
        self.balanced_loops = bl

    def to_biased(self) -> BiasedGraph:
        return BiasedGraph(self.graph, [{e} for e in sorted_tokens(self.balanced_loops)], check=False)

    @classmethod
    def from_biased(cls, BG: BiasedGraph) -> LoopBiasedGraph:
        loops = []
        for C in BG.balanced:
            if len(C) != 1:
                raise InvalidInput(f"balanced cycle {sorted_tokens(C)} is not a loop")
            loops.extend(C)
        return cls(BG.graph, loops)

    def delete(self, e) -> LoopBiasedGraph:
        return LoopBiasedGraph.from_biased(biased_minor(self.to_biased(), "delete", e))

    def contract(self, e) -> LoopBiasedGraph:
        return LoopBiasedGraph.from_biased(biased_minor(self.to_biased(), "contract", e))

    def __eq__(self, other):
        if not isinstance(other, LoopBiasedGraph):
            return NotImplemented
        return self.graph == other.graph and self.balanced_loops == other.balanced_loops

    def __hash__(self):
        return hash((self.graph, self.balanced_loops))

    def __repr__(self):
        return f"LoopBiasedGraph({self.graph!r}, balanced_loops={sorted_tokens(self.balanced_loops)})"


def bicircular_matroid(R: MultiGraph | LoopBiasedGraph, balanced_loops=()) -> CircuitMatroid:
    """Circuits: the balanced loops, and the bicycles containing none of them."""
    if isinstance(R, MultiGraph):
        R = LoopBiasedGraph(R, balanced_loops)
    g = R.graph
    bl = g.mask(R.balanced_loops)
    circuits = [frozenset({e}) for e in R.balanced_loops]
    circuits += [g.unmask(b) for b in _bicycle_masks(g) if not b & bl]
    return CircuitMatroid(g.labels, circuits, validate=False)


# ---------------------------------------------------------------------------
# pieces, chains, balloons and lines
# ---------------------------------------------------------------------------

def pieces_at(G: MultiGraph, v) -> list[frozenset]:
    """Edge sets of the pieces at v: each loop at v on its own, and each
    component of G - v together with its edges to v."""
    out = [frozenset({e}) for e in G.loops(at=v)]
    H = G.vertex_deleted(v)
    comp_of = {}
    groups = []
    for verts, edges in components(H):
        idx = len(groups)
        groups.append(set(edges))
        for x in verts:
            comp_of[x] = idx
    for e in G.star(v):
        x = G.other_end(e, v)
        if x not in comp_of:
            comp_of[x] = len(groups)
            groups.append(set())
        groups[comp_of[x]].add(e)
    for grp in groups:
        if any(v in G.ends(e) for e in grp):
            out.append(frozenset(grp))
    return sorted(out, key=lambda s: [sort_key(x) for x in sorted_tokens(s)])


def _degree_in(G: MultiGraph, X) -> dict:
    deg = {}
    for e in X:
        a, b = G.ends(e)
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


def _balloon_order(G: MultiGraph, X, v):
    """(stem, cycle) edge orders if G[X] is a subdivided loop through v or a
    subdivided loop-with-stem whose degree-one vertex is v; else None."""
    if v not in _degree_in(G, X):
        return None
    m = G.mask(X)
    comps = _mask_components(G, m)
    if len(comps) != 1 or len(X) != bin(comps[0][1]).count("1"):
        return None
    deg = _degree_in(G, X)
    dv = deg[v]
    others = sorted(d for x, d in deg.items() if x != v)
    if dv == 2:
        if any(d != 2 for d in others):
            return None
        stem = ()
        junction = v
    elif dv == 1:
        if others.count(3) != 1 or any(d not in (2, 3) for d in others):
            return None
        stem = []
        cur = v
        prev = None
        while True:
            nxt = [e for e in sorted_tokens(X) if e != prev and cur in G.ends(e) and not G.is_loop(e)]
            if deg[cur] == 3 and cur != v:
                break
            e = nxt[0]
            stem.append(e)
            cur = G.other_end(e, cur)
            prev = e
        stem = tuple(stem)
        junction = cur
    else:
        return None
    cyc_edges = set(X) - set(stem)
    cycle = _walk_cycle(G, cyc_edges, junction)
    return stem, cycle


def _walk_cycle(G: MultiGraph, edges, start) -> tuple:
    edges = set(edges)
    if len(edges) == 1:
        return tuple(edges)
    order = []
    cur = start
    while edges:
        e = min((f for f in edges if cur in G.ends(f)), key=sort_key)
        order.append(e)
        edges.discard(e)
        cur = G.other_end(e, cur)
    return tuple(order)


@dataclass(frozen=True)
class BalloonOrLine:
    kind: str  # "balloon" or "line"
    edges: frozenset
    attachments: tuple
    internal: frozenset
    # line: edges in path order from attachments[0]; balloon: (stem, cycle)
    order: tuple

    def __len__(self):
        return len(self.edges)


def _balloon_candidates(G: MultiGraph) -> list[BalloonOrLine]:
    cands = []
    for v in G.vertices:
        ps = pieces_at(G, v)
        for P in ps:
            if not any(v in G.ends(e) for e in G.labels if e not in P):
                continue
            shape = _balloon_order(G, P, v)
            if shape is None:
                continue
            verts = set()
            for e in P:
                verts.update(G.ends(e))
            cands.append(BalloonOrLine("balloon", P, (v,), frozenset(verts - {v}), shape))
    return cands


def balloons(G: MultiGraph, include_trivial: bool = False) -> list[BalloonOrLine]:
    cands = _balloon_candidates(G)
    out = [b for b in cands if not any(b.edges < c.edges for c in cands)]
    if not include_trivial:
        out = [b for b in out if len(b.edges) >= 2]
    return sorted(out, key=lambda b: [sort_key(x) for x in sorted_tokens(b.edges)])


def chains(G: MultiGraph, breakpoints=()) -> list[tuple]:
    """Maximal paths whose internal vertices have degree two and are not in
    ``breakpoints``. Returns (edge order, start, end) with distinct ends;
    closed chains are skipped."""
    deg = {v: G.degree(v) for v in G.vertices}
    stop = set(breakpoints)

    def through(x):
        return deg[x] == 2 and x not in stop

    seen = set()
    out = []
    for e in G.labels:
        if e in seen or G.is_loop(e):
            continue
        a, b = G.ends(e)
        path = [e]
        used = {e}
        closed = False
        ends = []
        for start, direction in ((a, 0), (b, 1)):
            cur, prev = start, e
            seq = []
            while through(cur):
                nxt = [f for f in G.incident(cur) if f != prev]
                f = nxt[0]
                if f in used:
                    closed = True
                    break
                seq.append(f)
                used.add(f)
                cur = G.other_end(f, cur)
                prev = f
            ends.append(cur)
            if direction == 0:
                path = list(reversed(seq)) + path
            else:
                path = path + seq
            if closed:
                break
        seen.update(used)
        if closed or ends[0] == ends[1]:
            continue
        start, end = ends
        if sort_key(end) < sort_key(start):
            path.reverse()
            start, end = end, start
        out.append((tuple(path), start, end))
    return sorted(out, key=lambda c: [sort_key(x) for x in sorted_tokens(c[0])])


def lines(G: MultiGraph, include_trivial: bool = False) -> list[BalloonOrLine]:
    in_balloon = set()
    for b in balloons(G):
        in_balloon |= b.edges
    out = []
    for path, s, t in chains(G):
        if in_balloon & set(path):
            continue
        if G.degree(s) < 3 or G.degree(t) < 3:
            continue
        if len(path) < 2 and not include_trivial:
            continue
        verts = set()
        for e in path:
            verts.update(G.ends(e))
        out.append(BalloonOrLine("line", frozenset(path), (s, t), frozenset(verts - {s, t}), path))
    return out


def balloons_and_lines(G: MultiGraph) -> list[BalloonOrLine]:
    """Non-trivial balloons and lines."""
    return balloons(G) + lines(G)


def _contract_along(G: MultiGraph, order, anchor, keep_edge) -> MultiGraph:
    """Contract the edges of ``order`` (a walk from ``anchor``) into ``anchor``,
    skipping ``keep_edge``."""
    for e in order:
        if e == keep_edge:
            break
        G = contract_edge(G, e, keep=anchor)
    return G


def co_graph(G: MultiGraph) -> MultiGraph:
    """Contract all but one edge of every balloon and line."""
    for b in balloons(G):
        stem, cycle = b.order
        keep = min(cycle, key=sort_key)
        v = b.attachments[0]
        G = _contract_along(G, stem, v, None)
        G = _contract_along(G, cycle, v, keep)
        rest = cycle[cycle.index(keep) + 1:]
        G = _contract_along(G, tuple(reversed(rest)), v, None)
    for ln in lines(G):
        path = ln.order
        keep = min(path, key=sort_key)
        s, t = ln.attachments
        G = _contract_along(G, path, s, keep)
        G = _contract_along(G, tuple(reversed(path)), t, keep)
    return G


# ---------------------------------------------------------------------------
# loop-sum
# ---------------------------------------------------------------------------

def _fresh(name, taken):
    cand = f"{name}'"
    while cand in taken:
        cand += "'"
    return cand


def loop_sum(G: MultiGraph, G2: MultiGraph, e) -> MultiGraph:
    """Delete the loop e from both graphs, take the disjoint union and
    identify the two vertices that carried e. Vertices of G2 that clash with
    vertices of G are renamed with primes."""
    for H in (G, G2):
        if e not in H.edges or not H.is_loop(e):
            raise InvalidInput(f"{e!r} must be a loop in both graphs")
        M = bicircular_matroid(H)
        if e in M.loops or e in M.coloops:
            raise InvalidInput(f"{e!r} is a loop or coloop of a summand")
    common = set(G.labels) & set(G2.labels)
    if common != {e}:
        raise InvalidInput("the two graphs may share only the edge label of the summing loop")
    v = G.ends(e)[0]
    v2 = G2.ends(e)[0]
    taken = set(G.vertices) | set(G2.vertices)
    ren = {}
    for x in G2.vertices:
        if x == v2:
            ren[x] = v
        elif x in G.vertices:
            ren[x] = _fresh(x, taken)
            taken.add(ren[x])
        else:
            ren[x] = x
    d = {f: ab for f, ab in G.edges.items() if f != e}
    for f, (a, b) in G2.edges.items():
        if f != e:
            d[f] = (ren[a], ren[b])
    verts = list(G.vertices) + [ren[x] for x in G2.vertices if ren[x] != v]
    return MultiGraph(d, verts)


# ---------------------------------------------------------------------------
# rolling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Roll:
    apex: object
    line: tuple  # edge order starting at the apex
    target: object


def _piece_containing(G: MultiGraph, v, e):
    for P in pieces_at(G, v):
        if e in P:
            return P
    return None


def _roll_violation(G: MultiGraph, line, v, w):
    line = tuple(line)
    if not line:
        return "empty line"
    e = line[0]
    if e not in G.edges or v not in G.ends(e) or G.is_loop(e):
        return "the first edge of the line must be a link at the apex"
    H = _piece_containing(G, v, e)
    if H is None:
        return "no piece at the apex contains the line"
    if not any(v in G.ends(f) for f in G.labels if f not in H):
        return "no 1-separation (H, K) at the apex"
    if not is_acyclic(G.subgraph(H).vertex_deleted(v)):
        return "H - v is not acyclic"
    sub = G.subgraph(H)
    match = None
    for path, s, t in chains(sub, breakpoints=(v,)):
        if s == v and path[0] == e:
            match = path
        elif t == v and path[-1] == e:
            match = tuple(reversed(path))
    if match is None or match != line:
        return "not a line of H with the apex as an end"
    verts = set()
    for f in line:
        verts.update(G.ends(f))
    if w == v or w not in verts:
        return "target must be a vertex of the line other than the apex"
    return None


def roll(G: MultiGraph, line, v, w) -> MultiGraph:
    """Roll ``line`` away from the apex ``v``: its edge at v is re-attached to ``w``."""
    bad = _roll_violation(G, line, v, w)
    if bad:
        raise InvalidOperation(f"roll: {bad}")
    e = tuple(line)[0]
    x = G.other_end(e, v)
    return G.with_ends(e, x, w)


def find_rolls(G: MultiGraph) -> list[Roll]:
    out = []
    for v in G.vertices:
        for H in pieces_at(G, v):
            if len(H) == 1 and G.is_loop(next(iter(H))):
                continue
            if not any(v in G.ends(f) for f in G.labels if f not in H):
                continue
            sub = G.subgraph(H)
            if not is_acyclic(sub.vertex_deleted(v)):
                continue
            for path, s, t in chains(sub, breakpoints=(v,)):
                if s == v:
                    line = path
                elif t == v:
                    line = tuple(reversed(path))
                else:
                    continue
                verts = []
                for f in line:
                    for x in G.ends(f):
                        if x != v and x not in verts:
                            verts.append(x)
                for w in verts:
                    out.append(Roll(v, line, w))
    return out


def unroll(G: MultiGraph, e, v, moved_end) -> MultiGraph:
    """Inverse of rolling: re-attach the ``moved_end`` of ``e`` to ``v``,
    provided rolling back away from ``v`` recovers G."""
    a, b = G.ends(e)
    if moved_end not in (a, b):
        raise InvalidOperation(f"unroll: {moved_end!r} is not an end of {e!r}")
    x = b if moved_end == a else a
    if v == x:
        raise InvalidOperation("unroll: the apex must differ from the fixed end")
    G0 = G.with_ends(e, x, v)
    for r in find_rolls(G0):
        if r.apex == v and r.line[0] == e and r.target == moved_end:
            return G0
    raise InvalidOperation("unroll: the result does not roll back to the given graph")


def find_unrolls(G: MultiGraph) -> list[tuple]:
    """(edge, apex, moved_end, result) for every legal unroll."""
    out = []
    for e in G.labels:
        a, b = G.ends(e)
        for moved in sorted_tokens({a, b}):
            x = b if moved == a else a
            for v in G.vertices:
                if v == x:
                    continue
                G0 = G.with_ends(e, x, v)
                for r in find_rolls(G0):
                    if r.apex == v and r.line[0] == e and r.target == moved:
                        out.append((e, v, moved, G0))
                        break
    return out


# ---------------------------------------------------------------------------
# rotation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RotationWitness:
    apex: object
    rotation_vertex: object
    lines: tuple  # (L1, L2, L3), each an edge order starting at the rotation vertex
    far_end: object  # common second end w of L2 and L3
    e1: object  # edge of L1 at the apex
    e2: object  # edge of L2 at w


def find_rotations(G: MultiGraph) -> list[RotationWitness]:
    out = []
    for v in G.vertices:
        for H in pieces_at(G, v):
            if not any(v in G.ends(f) for f in G.labels if f not in H):
                continue
            sub = G.subgraph(H)
            ch = chains(sub, breakpoints=(v,))
            for u in sub.vertices:
                if u == v or sub.degree(u) != 3 or sub.loops(at=u):
                    continue
                if not is_acyclic(sub.vertex_deleted([u, v])):
                    continue
                at_u = []
                for path, s, t in ch:
                    if s == u:
                        at_u.append((path, t))
                    elif t == u:
                        at_u.append((tuple(reversed(path)), s))
                if len(at_u) != 3:
                    continue
                to_v = [p for p in at_u if p[1] == v]
                others = [p for p in at_u if p[1] != v]
                if len(to_v) != 1 or len(others) != 2 or others[0][1] != others[1][1]:
                    continue
                w = others[0][1]
                if w in (u, v):
                    continue
                L1 = to_v[0][0]
                for L2, L3 in (others, others[::-1]):
                    out.append(RotationWitness(v, u, (L1, L2[0], L3[0]), w, L1[-1], L2[0][-1]))
    return out


def rotate(G: MultiGraph, witness: RotationWitness) -> MultiGraph:
    if witness not in find_rotations(G):
        raise InvalidOperation("rotate: the witness does not describe a rotation structure of G")
    v, w = witness.apex, witness.far_end
    e1, e2 = witness.e1, witness.e2
    G1 = G.with_ends(e1, G.other_end(e1, v), w)
    return G1.with_ends(e2, G.other_end(e2, w), v)


# ---------------------------------------------------------------------------
# replacement
# ---------------------------------------------------------------------------

def _find_structure(G: MultiGraph, Y) -> BalloonOrLine:
    Y = frozenset(Y)
    for s in balloons_and_lines(G):
        if s.edges == Y:
            return s
    raise InvalidOperation("replace: Y is not a line or balloon of G")


def replace(G: MultiGraph, Y, replacement) -> MultiGraph:
    """Rebuild the line or balloon Y on the same edges and attachments.

    For a line, ``replacement`` is the new edge order from the first
    attachment. For a balloon it is (stem order, cycle order); an empty stem
    puts the cycle through the attachment. Internal vertices are reused in
    sorted order."""
    s = _find_structure(G, Y)
    internal = sorted_tokens(s.internal)
    d = {e: ab for e, ab in G.edges.items() if e not in s.edges}
    if s.kind == "line":
        order = tuple(replacement)
        if sorted_tokens(order) != sorted_tokens(s.edges):
            raise InvalidOperation("replace: the new line must use exactly the edges of Y")
        a, b = s.attachments
        stops = [a] + internal + [b]
        for i, e in enumerate(order):
            d[e] = (stops[i], stops[i + 1])
    else:
        stem, cycle = (tuple(x) for x in replacement)
        if not cycle or sorted_tokens(stem + cycle) != sorted_tokens(s.edges) or len(set(stem + cycle)) != len(s.edges):
            raise InvalidOperation("replace: stem and cycle must partition the edges of Y, with a nonempty cycle")
        v = s.attachments[0]
        pool = list(internal)
        cur = v
        for e in stem:
            nxt = pool.pop(0)
            d[e] = (cur, nxt)
            cur = nxt
        junction = cur
        for i, e in enumerate(cycle):
            nxt = junction if i == len(cycle) - 1 else pool.pop(0)
            d[e] = (cur, nxt)
            cur = nxt
    return MultiGraph(d, G.vertices)


def replacements(G: MultiGraph, Y) -> list:
    """Every replacement argument for Y (edge orders or (stem, cycle) pairs)."""
    s = _find_structure(G, Y)
    edges = sorted_tokens(s.edges)
    if s.kind == "line":
        return [p for p in itertools.permutations(edges)]
    out = []
    n = len(edges)
    for k in range(n):
        for stem in itertools.permutations(edges, k):
            rest = [e for e in edges if e not in stem]
            first = rest[0]
            for tail in itertools.permutations(rest[1:]):
                cyc = (first,) + tail
                # a cycle and its reversal give the same graph
                if len(cyc) > 2 and cyc[1:] > tuple(reversed(cyc[1:])):
                    continue
                out.append((stem, cyc))
    return out


def standardize_balloons(G: MultiGraph) -> MultiGraph:
    """Put every balloon in standard form: a one-edge stem (its least edge)
    and the remaining edges as the cycle in label order."""
    for b in balloons(G):
        edges = sorted_tokens(b.edges)
        G = replace(G, b.edges, ((edges[0],), tuple(edges[1:])))
    return G


def is_standard_balloon(G: MultiGraph, b: BalloonOrLine) -> bool:
    v = b.attachments[0]
    if _degree_in(G, b.edges).get(v) != 1:
        return False
    stem = b.order[0]
    nbr = G.other_end(stem[0], v)
    return G.degree(nbr) == 3


# ---------------------------------------------------------------------------
# types and closure
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RepTypeWitness:
    type: int
    apex: object = None
    rotation_vertex: object = None
    rotation_lines: tuple | None = None


def _type1_apexes(G: MultiGraph) -> list:
    return [v for v in G.vertices if is_acyclic(G.vertex_deleted(v))]


def classify_graph_type(G: MultiGraph) -> RepTypeWitness:
    if not is_connected(G):
        raise InvalidInput("classify_graph_type needs a connected graph")
    apexes = _type1_apexes(G)
    if apexes:
        return RepTypeWitness(1, apex=apexes[0])
    rots = find_rotations(G)
    if rots:
        r = rots[0]
        return RepTypeWitness(2, apex=r.apex, rotation_vertex=r.rotation_vertex, rotation_lines=r.lines)
    return RepTypeWitness(3)


def apex_vertices(G: MultiGraph) -> frozenset:
    """Vertices v with G - v acyclic; for a graph with none, the apexes of
    its rotation structures."""
    if not is_connected(G):
        raise InvalidInput("apex_vertices needs a connected graph")
    apexes = _type1_apexes(G)
    if apexes:
        return frozenset(apexes)
    return frozenset(r.apex for r in find_rotations(G))


def neighbours_by_moves(G: MultiGraph, replacement_cap: int = 720):
    """Graphs one rolling, unrolling, rotation or replacement away from G."""
    for r in find_rolls(G):
        yield roll(G, r.line, r.apex, r.target)
    for _, _, _, G0 in find_unrolls(G):
        yield G0
    for w in find_rotations(G):
        yield rotate(G, w)
    for s in balloons_and_lines(G):
        reps = replacements(G, s.edges)
        if len(reps) > replacement_cap:
            raise ResourceLimit(f"{len(reps)} replacements for one structure exceeds cap {replacement_cap}")
        for rep in reps:
            yield replace(G, s.edges, rep)


def representation_closure(G: MultiGraph, cap_vertices: int = CANONICAL_VERTEX_CAP,
                           max_graphs: int = 5000) -> list[MultiGraph]:
    """All graphs reachable from G by rolling, unrolling, rotation and
    replacement, one per graph up to renaming vertices, in discovery order."""
    if not is_connected(G):
        raise InvalidInput("representation_closure needs a connected graph")
    if G.num_vertices > cap_vertices:
        raise ResourceLimit(f"{G.num_vertices} vertices exceeds closure cap {cap_vertices}")
    seen = {labeled_key(G)}
    out = [G]
    queue = deque([G])
    while queue:
        H = queue.popleft()
        for K in neighbours_by_moves(H):
            key = labeled_key(K)
            if key in seen:
                continue
            seen.add(key)
            out.append(K)
            if len(out) > max_graphs:
                raise ResourceLimit(f"closure exceeds {max_graphs} graphs")
            queue.append(K)
    return out


# ---------------------------------------------------------------------------
# essential 2-separation shape
# ---------------------------------------------------------------------------

def _loops_at_one_vertex(G: MultiGraph, X) -> bool:
    return all(G.is_loop(e) for e in X) and len({G.ends(e)[0] for e in X}) == 1


def essential_2_separation_shape(G: MultiGraph, A) -> bool:
    """Shape test for an essential 2-separation (A, E - A) of a connected
    B(G): exactly two parts contain bicycles, one inside each side, the rest
    of G is a path joining them, and neither side is only loops at one vertex."""
    A = frozenset(A)
    B = frozenset(G.labels) - A
    if not A or not B:
        return False
    if _loops_at_one_vertex(G, A) or _loops_at_one_vertex(G, B):
        return False
    dense = []
    for side, X in (("A", A), ("B", B)):
        for em, vm in _mask_components(G, G.mask(X)):
            if bin(em).count("1") > bin(vm).count("1"):
                dense.append((side, em, vm))
    if len(dense) != 2 or {d[0] for d in dense} != {"A", "B"}:
        return False
    (_, ea, va), (_, eb, vb) = dense
    rest = G.full_mask & ~ea & ~eb
    if not rest:
        return bin(va & vb).count("1") == 1
    if va & vb:
        return False
    comps = _mask_components(G, rest)
    if len(comps) != 1:
        return False
    em, vm = comps[0]
    if bin(em).count("1") != bin(vm).count("1") - 1:
        return False
    deg = {}
    for i in range(G.num_edges):
        if (rest >> i) & 1:
            for x in G._ends_idx[i]:
                deg[x] = deg.get(x, 0) + 1
    if max(deg.values()) > 2:
        return False
    ends = [x for x, d in deg.items() if d == 1]
    if bin(vm & va).count("1") != 1 or bin(vm & vb).count("1") != 1:
        return False
    ia = (vm & va).bit_length() - 1
    ib = (vm & vb).bit_length() - 1
    return sorted(ends) == sorted([ia, ib])
