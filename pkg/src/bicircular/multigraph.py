"""Labeled multigraphs with loops and parallel edges.

Edge labels and vertex ids are arbitrary hashable tokens (ints or strings).
Every traversal is done in label order so that results are reproducible.
Internally most routines work on bitmasks over the edge index, where edge
``i`` is the ``i``-th label in sorted order.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping
from functools import cached_property
from types import MappingProxyType

import networkx as nx

from .errors import InvalidInput, InvalidOperation, ResourceLimit

CANONICAL_VERTEX_CAP = 10


def sort_key(x):
    """Total order on mixed int/str tokens: ints first, numerically."""
    if isinstance(x, int) and not isinstance(x, bool):
        return (0, x, "")
    return (1, 0, str(x))


def sorted_tokens(items):
    return sorted(items, key=sort_key)


def popcount(x: int) -> int:
    return bin(x).count("1")


def iter_bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


class MultiGraph:
    """Immutable labeled multigraph.

    ``edges`` maps a label to its pair of ends; a loop has equal ends.
    Isolated vertices are allowed and are passed via ``vertices``.
    """

    __slots__ = ("_vertices", "_ends", "_labels", "_hash", "__dict__")

    def __init__(self, edges=None, vertices: Iterable = ()):
        ends = {}
        if edges is None:
            edges = {}
        items = edges.items() if isinstance(edges, Mapping) else ((t[0], t[1:]) for t in edges)
        verts = set(vertices)
        for label, uv in items:
            if len(uv) == 1:
                u = v = uv[0]
            elif len(uv) == 2:
                u, v = uv
            else:
                raise InvalidInput(f"edge {label!r} must have one or two ends")
            if label in ends:
                raise InvalidInput(f"duplicate edge label {label!r}")
            if sort_key(v) < sort_key(u):
                u, v = v, u
            ends[label] = (u, v)
            verts.add(u)
            verts.add(v)
        self._vertices = tuple(sorted_tokens(verts))
        self._labels = tuple(sorted_tokens(ends))
        self._ends = MappingProxyType({e: ends[e] for e in self._labels})
        self._hash = None

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def edges(self) -> Mapping:
        return self._ends

    def ends(self, e):
        try:
            return self._ends[e]
        except KeyError:
            raise InvalidInput(f"unknown edge label {e!r}") from None

    def is_loop(self, e) -> bool:
        u, v = self.ends(e)
        return u == v

    def loops(self, at=None) -> tuple:
        return tuple(e for e in self._labels
                     if self._ends[e][0] == self._ends[e][1] and (at is None or self._ends[e][0] == at))

    def links(self) -> tuple:
        return tuple(e for e in self._labels if self._ends[e][0] != self._ends[e][1])

    def incident(self, v) -> tuple:
        return tuple(e for e in self._labels if v in self._ends[e])

    def degree(self, v) -> int:
        """Number of edge-ends at ``v``; a loop counts twice."""
        d = 0
        for a, b in self._ends.values():
            d += (a == v) + (b == v)
        return d

    def star(self, v) -> tuple:
        """Links at ``v`` (the loop-free star)."""
        return tuple(e for e in self._labels if v in self._ends[e] and self._ends[e][0] != self._ends[e][1])

    def star_degree(self, v) -> int:
        return len(self.star(v))

    def neighbors(self, v) -> tuple:
        out = set()
        for a, b in self._ends.values():
            if a == v and b != v:
                out.add(b)
            elif b == v and a != v:
                out.add(a)
        return tuple(sorted_tokens(out))

    def other_end(self, e, v):
        a, b = self.ends(e)
        if a == v:
            return b
        if b == v:
            return a
        raise InvalidInput(f"{v!r} is not an end of {e!r}")

    @property
    def num_vertices(self) -> int:
        return len(self._vertices)

    @property
    def num_edges(self) -> int:
        return len(self._labels)

    # -- derived graphs --------------------------------------------------
    def subgraph(self, X) -> MultiGraph:
        """G[X]: the edges in ``X`` on the vertex set V(X)."""
        X = check_subset(self, X)
        return MultiGraph({e: self._ends[e] for e in X})

    def edge_deleted(self, X) -> MultiGraph:
        """Delete the edges in ``X``, keeping every vertex."""
        X = check_subset(self, X)
        return MultiGraph({e: uv for e, uv in self._ends.items() if e not in X}, self._vertices)

    def vertex_deleted(self, vs) -> MultiGraph:
        vs = set(vs) if not _is_token(vs) else {vs}
        return MultiGraph({e: (a, b) for e, (a, b) in self._ends.items() if a not in vs and b not in vs},
                          [v for v in self._vertices if v not in vs])

    def with_ends(self, e, u, v) -> MultiGraph:
        """Redefine the incidence of ``e``."""
        self.ends(e)
        d = dict(self._ends)
        d[e] = (u, v)
        return MultiGraph(d, self._vertices)

    def with_edge(self, e, u, v) -> MultiGraph:
        if e in self._ends:
            raise InvalidInput(f"edge label {e!r} already present")
        d = dict(self._ends)
        d[e] = (u, v)
        return MultiGraph(d, self._vertices)

    def relabel_vertices(self, mapping) -> MultiGraph:
        if isinstance(mapping, Mapping):
            def m(x):
                return mapping.get(x, x)
        else:
            m = mapping
        return MultiGraph({e: (m(a), m(b)) for e, (a, b) in self._ends.items()}, [m(v) for v in self._vertices])

    def relabel_edges(self, mapping) -> MultiGraph:
        return MultiGraph({mapping.get(e, e): uv for e, uv in self._ends.items()}, self._vertices)

    # -- value semantics -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._ends) == dict(other._ends)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self._ends.items())))
        return self._hash

    def __repr__(self):
        parts = []
        for e in self._labels:
            a, b = self._ends[e]
            parts.append(f"{e}:{a}" if a == b else f"{e}:{a}-{b}")
        iso = [v for v in self._vertices if v not in self._used_vertices]
        extra = f", isolated={iso}" if iso else ""
        return f"MultiGraph({' '.join(parts)}{extra})"

    @cached_property
    def _used_vertices(self):
        s = set()
        for a, b in self._ends.values():
            s.add(a)
            s.add(b)
        return frozenset(s)

    # -- bitmask view ------------------------------------------------------
    @cached_property
    def _edge_index(self):
        return {e: i for i, e in enumerate(self._labels)}

    @cached_property
    def _vertex_index(self):
        return {v: i for i, v in enumerate(self._vertices)}

    @cached_property
    def _ends_idx(self):
        vi = self._vertex_index
        return tuple((vi[self._ends[e][0]], vi[self._ends[e][1]]) for e in self._labels)

    @cached_property
    def _evmask(self):
        return tuple((1 << a) | (1 << b) for a, b in self._ends_idx)

    def mask(self, X) -> int:
        idx = self._edge_index
        m = 0
        for e in X:
            try:
                m |= 1 << idx[e]
            except KeyError:
                raise InvalidInput(f"unknown edge label {e!r}") from None
        return m

    def unmask(self, mask: int) -> frozenset:
        return frozenset(self._labels[i] for i in iter_bits(mask))

    @property
    def full_mask(self) -> int:
        return (1 << len(self._labels)) - 1


def _is_token(x) -> bool:
    return isinstance(x, (int, str))


def check_subset(G: MultiGraph, X) -> frozenset:
    X = frozenset(X)
    bad = [e for e in X if e not in G.edges]
    if bad:
        raise InvalidInput(f"unknown edge label(s) {sorted_tokens(bad)!r}")
    return X


# ---------------------------------------------------------------------------
# vertex sets, components, rank
# ---------------------------------------------------------------------------

def _vmask(G: MultiGraph, mask: int) -> int:
    ev = G._evmask
    vm = 0
    for i in iter_bits(mask):
        vm |= ev[i]
    return vm


def induced_vertices(G: MultiGraph, X) -> frozenset:
    """V(X): vertices with an incident edge in X."""
    X = check_subset(G, X)
    out = set()
    for e in X:
        out.update(G.edges[e])
    return frozenset(out)


def _mask_components(G: MultiGraph, mask: int):
    """Components of G[mask] as (edge_mask, vertex_mask) pairs."""
    ends = G._ends_idx
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in iter_bits(mask):
        a, b = ends[i]
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    comps = {}
    for i in iter_bits(mask):
        r = find(ends[i][0])
        em, vm = comps.get(r, (0, 0))
        comps[r] = (em | (1 << i), vm | (1 << ends[i][0]) | (1 << ends[i][1]))
    return list(comps.values())


def components(G: MultiGraph, X=None) -> list[tuple[frozenset, frozenset]]:
    """Components of G[X] as (vertices, edges), in order of least edge."""
    mask = G.full_mask if X is None else G.mask(check_subset(G, X))
    out = []
    for em, vm in sorted(_mask_components(G, mask), key=lambda c: c[0] & -c[0]):
        out.append((frozenset(G.vertices[i] for i in iter_bits(vm)), G.unmask(em)))
    return out


def _acyclic_count(G: MultiGraph, mask: int) -> int:
    return sum(1 for em, vm in _mask_components(G, mask) if popcount(em) == popcount(vm) - 1)


def acyclic_component_count(G: MultiGraph, X) -> int:
    """a(X): components of G[X] that contain no cycle (loops and parallels are cycles)."""
    return _acyclic_count(G, G.mask(check_subset(G, X)))


def bicircular_rank(G: MultiGraph, X) -> int:
    """|V(X)| - a(X)."""
    mask = G.mask(check_subset(G, X))
    return popcount(_vmask(G, mask)) - _acyclic_count(G, mask)


def is_connected(G: MultiGraph) -> bool:
    """Connected on its whole vertex set; the empty graph counts as connected."""
    if G.num_vertices <= 1:
        return True
    comps = _mask_components(G, G.full_mask)
    return len(comps) == 1 and popcount(comps[0][1]) == G.num_vertices


def is_acyclic(G: MultiGraph, X=None) -> bool:
    mask = G.full_mask if X is None else G.mask(check_subset(G, X))
    return all(popcount(em) == popcount(vm) - 1 for em, vm in _mask_components(G, mask))


def _degrees(G: MultiGraph, mask: int) -> dict:
    deg = {}
    for i in iter_bits(mask):
        a, b = G._ends_idx[i]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
    return deg


# ---------------------------------------------------------------------------
# cycles and bicycles
# ---------------------------------------------------------------------------

def _is_cycle_mask(G: MultiGraph, mask: int) -> bool:
    if not mask:
        return False
    deg = _degrees(G, mask)
    if any(d != 2 for d in deg.values()):
        return False
    return len(_mask_components(G, mask)) == 1


def is_cycle(G: MultiGraph, X) -> bool:
    return _is_cycle_mask(G, G.mask(check_subset(G, X)))


def _is_bicycle_mask(G: MultiGraph, mask: int) -> bool:
    if not mask:
        return False
    deg = _degrees(G, mask)
    if popcount(mask) != len(deg) + 1 or min(deg.values()) < 2:
        return False
    return len(_mask_components(G, mask)) == 1


def is_bicycle(G: MultiGraph, X) -> bool:
    """Connected, one more edge than vertices, and no vertex of degree one."""
    return _is_bicycle_mask(G, G.mask(check_subset(G, X)))


def _cycle_masks(G: MultiGraph) -> list[int]:
    ends = G._ends_idx
    n = G.num_vertices
    out = []
    # adjacency over links: vertex -> list of (nbr, edge index)
    adj = [[] for _ in range(n)]
    by_pair = {}
    for i, (a, b) in enumerate(ends):
        if a == b:
            out.append(1 << i)
        else:
            adj[a].append((b, i))
            adj[b].append((a, i))
            by_pair.setdefault((a, b), []).append(i)
    for lst in by_pair.values():
        for i, j in itertools.combinations(lst, 2):
            out.append((1 << i) | (1 << j))
    # simple cycles of length >= 3, rooted at their least vertex
    for s in range(n):
        def dfs(v, path_vertices, emask, length):
            for w, i in adj[v]:
                if w == s and length >= 2:
                    out.append(emask | (1 << i))
                elif w > s and not (path_vertices >> w) & 1:
                    dfs(w, path_vertices | (1 << w), emask | (1 << i), length + 1)

        dfs(s, 1 << s, 0, 0)
    # each long cycle is found in both directions; deduplicate preserving order
    seen = set()
    uniq = []
    for c in out:
        if c not in seen:
            seen.add(c)
            uniq.append(c)
    return uniq


def cycles(G: MultiGraph) -> list[frozenset]:
    """All cycles of G (loops, parallel pairs and longer cycles) as edge sets."""
    return [G.unmask(c) for c in _cycle_masks_cached(G)]


def _cycle_masks_cached(G: MultiGraph) -> tuple:
    c = G.__dict__.get("_cyc")
    if c is None:
        c = tuple(sorted(_cycle_masks(G)))
        G.__dict__["_cyc"] = c
    return c


def _bicycle_masks(G: MultiGraph) -> tuple:
    cached = G.__dict__.get("_bic")
    if cached is not None:
        return cached
    cyc = _cycle_masks_cached(G)
    vm = [_vmask(G, c) for c in cyc]
    ends = G._ends_idx
    n = G.num_vertices
    adj = [[] for _ in range(n)]
    for i, (a, b) in enumerate(ends):
        if a != b:
            adj[a].append((b, i))
            adj[b].append((a, i))
    found = set()
    for x in range(len(cyc)):
        for y in range(x + 1, len(cyc)):
            c1, c2 = cyc[x], cyc[y]
            if c1 & c2:
                u = c1 | c2
                if popcount(u) == popcount(vm[x] | vm[y]) + 1:
                    found.add(u)
            elif vm[x] & vm[y]:
                if popcount(vm[x] & vm[y]) == 1:
                    found.add(c1 | c2)
            else:
                base = c1 | c2
                block = vm[x] | vm[y]
                target = vm[y]
                for s in iter_bits(vm[x]):
                    stack = [(s, 0, 1 << s)]
                    while stack:
                        v, pm, visited = stack.pop()
                        for w, i in adj[v]:
                            if (base >> i) & 1 or (pm >> i) & 1:
                                continue
                            if (target >> w) & 1:
                                found.add(base | pm | (1 << i))
                            elif not (block >> w) & 1 and not (visited >> w) & 1:
                                stack.append((w, pm | (1 << i), visited | (1 << w)))
    result = tuple(sorted(found))
    G.__dict__["_bic"] = result
    return result


def _bicycle_kind_mask(G: MultiGraph, mask: int) -> str:
    deg = _degrees(G, mask)
    if 4 in deg.values():
        return "tight_handcuffs"
    # two vertices of degree three: theta iff there is no bridge
    for i in iter_bits(mask):
        if len(_mask_components(G, mask & ~(1 << i))) > 1:
            return "loose_handcuffs"
    return "theta"


def bicycle_kind(G: MultiGraph, X) -> str:
    mask = G.mask(check_subset(G, X))
    if not _is_bicycle_mask(G, mask):
        raise InvalidInput("edge set is not a bicycle")
    return _bicycle_kind_mask(G, mask)


def enumerate_bicycles(G: MultiGraph) -> list[tuple[frozenset, str]]:
    """Every bicycle of G with its shape: theta, tight_handcuffs or loose_handcuffs."""
    return [(G.unmask(m), _bicycle_kind_mask(G, m)) for m in _bicycle_masks(G)]


# ---------------------------------------------------------------------------
# minors
# ---------------------------------------------------------------------------

def delete_edge(G: MultiGraph, e) -> MultiGraph:
    G.ends(e)
    return G.edge_deleted({e})


def contract_edge(G: MultiGraph, e, keep=None) -> MultiGraph:
    """Identify the ends of the link ``e``; ``keep`` (default the smaller end) survives."""
    u, v = G.ends(e)
    if u == v:
        raise InvalidOperation(f"{e!r} is a loop; contract loops through the biased-graph minor operations")
    if keep is not None:
        if keep not in (u, v):
            raise InvalidInput(f"{keep!r} is not an end of {e!r}")
        if keep == v:
            u, v = v, u
    d = {}
    for f, (a, b) in G.edges.items():
        if f == e:
            continue
        d[f] = (u if a == v else a, u if b == v else b)
    return MultiGraph(d, [x for x in G.vertices if x != v])


def contract_edges(G: MultiGraph, X) -> MultiGraph:
    """Contract the edges of X one at a time; edges that became loops are deleted."""
    for e in sorted_tokens(X):
        G = delete_edge(G, e) if G.is_loop(e) else contract_edge(G, e)
    return G


# ---------------------------------------------------------------------------
# connectivity
# ---------------------------------------------------------------------------

def _connected_without(G: MultiGraph, v) -> bool:
    H = G.vertex_deleted(v)
    return is_connected(H)


def is_2connected(G: MultiGraph) -> bool:
    """At least three vertices and no proper separation of order below two.

    An isolated vertex makes a graph disconnected here.
    """
    if G.num_vertices < 3 or not is_connected(G):
        return False
    return all(_connected_without(G, v) for v in G.vertices)


class GraphSeparation:
    __slots__ = ("side_a", "side_b", "boundary")

    def __init__(self, side_a, side_b, boundary):
        self.side_a = frozenset(side_a)
        self.side_b = frozenset(side_b)
        self.boundary = frozenset(boundary)

    def __eq__(self, other):
        return (isinstance(other, GraphSeparation) and self.side_a == other.side_a
                and self.side_b == other.side_b)

    def __hash__(self):
        return hash((self.side_a, self.side_b))

    def __repr__(self):
        return (f"GraphSeparation({sorted_tokens(self.side_a)} | {sorted_tokens(self.side_b)}, "
                f"boundary={sorted_tokens(self.boundary)})")


def separation(G: MultiGraph, A) -> GraphSeparation:
    A = check_subset(G, A)
    B = frozenset(G.labels) - A
    return GraphSeparation(A, B, induced_vertices(G, A) & induced_vertices(G, B))


def proper_k_separations(G: MultiGraph, k: int, cap: int = 20) -> list[GraphSeparation]:
    """Proper separations (A, B) with |V(A) & V(B)| == k; each unordered pair once,
    with the side holding the least label first."""
    m = G.num_edges
    if m > cap:
        raise ResourceLimit(f"{m} edges exceeds separation enumeration cap {cap}")
    if m < 2:
        return []
    full = G.full_mask
    out = []
    for rest in range(1 << (m - 1)):
        a = (rest << 1) | 1
        b = full & ~a
        if not b:
            continue
        va, vb = _vmask(G, a), _vmask(G, b)
        if popcount(va & vb) == k and va & ~vb and vb & ~va:
            out.append(GraphSeparation(G.unmask(a), G.unmask(b),
                                       (G.vertices[i] for i in iter_bits(va & vb))))
    return out


def contractible_edges(G: MultiGraph) -> frozenset:
    """Links whose contraction leaves G 2-connected. Loops are never contractible."""
    if G.num_vertices < 4 or not is_2connected(G):
        raise InvalidInput("contractible_edges needs a 2-connected graph on at least 4 vertices")
    return frozenset(e for e in G.links() if is_2connected(contract_edge(G, e)))


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------

def _simple_nx(G: MultiGraph) -> tuple[nx.Graph, dict]:
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    rep = {}
    for e in G.labels:
        a, b = G.edges[e]
        if a != b and (a, b) not in rep:
            rep[(a, b)] = e
            H.add_edge(a, b)
    return H, rep


def maximum_matching(G: MultiGraph) -> frozenset:
    """A maximum matching as a set of edge labels (least label among parallels)."""
    H, rep = _simple_nx(G)
    M = nx.max_weight_matching(H, maxcardinality=True)
    out = set()
    for a, b in M:
        if sort_key(b) < sort_key(a):
            a, b = b, a
        out.add(rep[(a, b)])
    return frozenset(out)


def matching_number(G: MultiGraph) -> int:
    return len(maximum_matching(G))


def barrier_set(G: MultiGraph) -> tuple[frozenset, frozenset, frozenset]:
    """Edmonds-Gallai partition (A, B, C): A = vertices missed by some maximum
    matching, B = neighbours of A outside A, C = the rest."""
    nu = matching_number(G)
    A = frozenset(v for v in G.vertices if matching_number(G.vertex_deleted(v)) == nu)
    B = set()
    for v in A:
        B.update(G.neighbors(v))
    B = frozenset(B) - A
    C = frozenset(G.vertices) - A - B
    return A, B, C


def simplify(G: MultiGraph) -> MultiGraph:
    """si(G): drop loops, keep the least label of each parallel class."""
    keep = {}
    for e in G.labels:
        a, b = G.edges[e]
        if a != b and (a, b) not in keep:
            keep[(a, b)] = e
    return MultiGraph({e: ab for ab, e in keep.items()}, G.vertices)


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------

def _refine(adj, cells):
    """Refine an ordered partition until equitable; deterministic and
    invariant under vertex relabeling."""
    changed = True
    while changed:
        changed = False
        new_cells = []
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig = {}
            for x in cell:
                row = adj[x]
                sig[x] = tuple(sum(row[y] for y in c) for c in cells)
            groups = {}
            for x in cell:
                groups.setdefault(sig[x], []).append(x)
            if len(groups) > 1:
                changed = True
                for key in sorted(groups):
                    new_cells.append(groups[key])
            else:
                new_cells.append(cell)
        cells = new_cells
    return cells


def _canonical_code(n: int, adj) -> tuple:
    if n == 0:
        return ()
    init = {}
    for x in range(n):
        row = adj[x]
        key = (row[x], sum(row) - row[x], tuple(sorted(row[y] for y in range(n) if y != x)))
        init.setdefault(key, []).append(x)
    cells = [init[k] for k in sorted(init)]
    best = None

    def search(cells):
        nonlocal best
        cells = _refine(adj, cells)
        if all(len(c) == 1 for c in cells):
            perm = [c[0] for c in cells]
            code = tuple(adj[perm[i]][perm[j]] for i in range(n) for j in range(i, n))
            if best is None or code < best:
                best = code
            return
        idx = min((i for i, c in enumerate(cells) if len(c) > 1), key=lambda i: (len(cells[i]), i))
        cell = cells[idx]
        for x in cell:
            rest = [y for y in cell if y != x]
            search(cells[:idx] + [[x], rest] + cells[idx + 1:])

    search(cells)
    return best


def _adjacency(G: MultiGraph):
    n = G.num_vertices
    adj = [[0] * n for _ in range(n)]
    for a, b in G._ends_idx:
        if a == b:
            adj[a][a] += 1
        else:
            adj[a][b] += 1
            adj[b][a] += 1
    return adj


def canonical_form(G: MultiGraph, cap: int = CANONICAL_VERTEX_CAP) -> str:
    """Isomorphism-invariant string: equal strings iff isomorphic multigraphs."""
    n = G.num_vertices
    if n > cap:
        raise ResourceLimit(f"{n} vertices exceeds canonical-form cap {cap}")
    code = _canonical_code(n, _adjacency(G))
    return f"{n}:" + ",".join(map(str, code))


def is_isomorphic(G: MultiGraph, H: MultiGraph, cap: int = CANONICAL_VERTEX_CAP) -> bool:
    if (G.num_vertices, G.num_edges) != (H.num_vertices, H.num_edges):
        return False
    return canonical_form(G, cap) == canonical_form(H, cap)


def labeled_key(G: MultiGraph):
    """Key that identifies G up to renaming vertices but keeps edge labels."""
    stars = []
    for v in G.vertices:
        inc = frozenset(G.incident(v))
        stars.append((inc, frozenset(G.loops(at=v))))
    counts = {}
    for s in stars:
        counts[s] = counts.get(s, 0) + 1
    return frozenset(counts.items())


def from_adjacency(adj, vertices=None) -> MultiGraph:
    """Build a graph from a multiplicity matrix; edges are labelled 1..m in slot order."""
    n = len(adj)
    vertices = list(range(n)) if vertices is None else list(vertices)
    edges = {}
    label = 1
    for i in range(n):
        for j in range(i, n):
            for _ in range(adj[i][j]):
                edges[label] = (vertices[i], vertices[j])
                label += 1
    return MultiGraph(edges, vertices)


def enumerate_multigraphs(n: int, max_edges: int, *, min_edges: int = 0, connected: bool = True,
                          loops: bool = True, multiple: bool = True):
    """All multigraphs on exactly ``n`` vertices with ``min_edges..max_edges`` edges,
    one per isomorphism class, grown edge by edge from trees (connected) or the
    empty graph. Yields graphs with vertices 0..n-1 and edges labelled 1..m."""
    if n == 0:
        if min_edges == 0:
            yield MultiGraph()
        return
    slots = [(i, j) for i in range(n) for j in range(i, n) if loops or i != j]

    def key_of(adj):
        return _canonical_code(n, adj)

    if connected:
        start_m = n - 1
        level = {}
        for tree in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            adj = [[0] * n for _ in range(n)]
            for a, b in tree.edges():
                adj[a][b] = adj[b][a] = 1
            level.setdefault(key_of(adj), adj)
    else:
        start_m = 0
        adj = [[0] * n for _ in range(n)]
        level = {key_of(adj): adj}
    m = start_m
    while m <= max_edges:
        if m >= min_edges:
            for key in sorted(level):
                yield from_adjacency(level[key])
        if m == max_edges:
            break
        nxt = {}
        for adj in level.values():
            for i, j in slots:
                if not multiple and i != j and adj[i][j]:
                    continue
                if not multiple and i == j and adj[i][i]:
                    continue
                new = [row[:] for row in adj]
                new[i][j] += 1
                if i != j:
                    new[j][i] += 1
                k = key_of(new)
                if k not in nxt:
                    nxt[k] = new
        level = nxt
        m += 1
