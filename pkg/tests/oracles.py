"""Slow, independent reference implementations used to freeze expected values."""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from bicircular.matroid import CircuitMatroid, find_isomorphism, matroid_signature
from bicircular.multigraph import enumerate_multigraphs


def brute_rank(circuits, ground, X) -> int:
    """Largest subset of X containing no circuit, by exhaustive search."""
    X = list(X)
    cs = [frozenset(c) for c in circuits]
    for k in range(len(X), -1, -1):
        for S in itertools.combinations(X, k):
            s = frozenset(S)
            if not any(c <= s for c in cs):
                return k
    return 0


def brute_bicycles(G):
    """Edge sets with |X| = |V(X)| + 1, connected, minimum degree 2 and no
    proper subset of the same kind: checked directly on every subset."""
    labels = G.labels

    def dense(S):
        verts = set()
        for e in S:
            verts.update(G.ends(e))
        return len(S) > len(verts)

    out = []
    for k in range(1, len(labels) + 1):
        for S in itertools.combinations(labels, k):
            s = frozenset(S)
            if any(c <= s for c in out):
                continue
            # minimal sets with more edges than vertices are the bicycles
            if any(dense(s - {e}) for e in s):
                continue
            if dense(s):
                out.append(s)
    return out


# -- all matroids on few elements, by single-element extension ------------

def _closure_table(M: CircuitMatroid) -> list[int]:
    n = M.size
    out = []
    for X in range(1 << n):
        r = M._rank_mask(X)
        c = X
        for i in range(n):
            if not (X >> i) & 1 and M._rank_mask(X | (1 << i)) == r:
                c |= 1 << i
        out.append(c)
    return out


def modular_cuts(M: CircuitMatroid):
    """Every modular cut of M, as a frozenset of flat masks."""
    n = M.size
    cl = _closure_table(M)
    flats = sorted({c for c in cl}, key=lambda f: (-M._rank_mask(f), f))
    rk = {f: M._rank_mask(f) for f in flats}
    supersets = {f: [g for g in flats if g != f and g & f == f] for f in flats}
    pairs = {f: [] for f in flats}
    for a, b in itertools.combinations(flats, 2):
        meet = a & b
        if meet in (a, b):
            continue
        if rk[a] + rk[b] == M._rank_mask(a | b) + rk[meet]:
            pairs[meet].append((a, b))

    def dfs(i, cut):
        if i == len(flats):
            yield frozenset(cut)
            return
        f = flats[i]
        can = all(g in cut for g in supersets[f])
        must = any(a in cut and b in cut for a, b in pairs[f])
        if must and not can:
            return
        if can:
            cut.add(f)
            yield from dfs(i + 1, cut)
            cut.discard(f)
        if not must:
            yield from dfs(i + 1, cut)

    yield from dfs(0, set())


def extension(M: CircuitMatroid, cut) -> CircuitMatroid:
    n = M.size
    cl = _closure_table(M)
    table = np.zeros(1 << (n + 1), dtype=np.int16)
    for X in range(1 << n):
        r = M._rank_mask(X)
        table[X] = r
        table[X | (1 << n)] = r if cl[X] in cut else r + 1
    return CircuitMatroid.from_rank_table(tuple(range(n + 1)), table)


@lru_cache(maxsize=None)
def all_matroids(n: int) -> tuple:
    """One matroid per isomorphism class on ground set 0..n-1."""
    if n == 0:
        return (CircuitMatroid((), []),)
    buckets = {}
    out = []
    for M in all_matroids(n - 1):
        for cut in modular_cuts(M):
            N = extension(M, cut)
            sig = matroid_signature(N)
            bucket = buckets.setdefault(sig, [])
            if any(find_isomorphism(N, K) is not None for K in bucket):
                continue
            bucket.append(N)
            out.append(N)
    return tuple(out)


# -- naive bicircularity -----------------------------------------------------

@lru_cache(maxsize=None)
def _graph_matroids(r: int, m: int) -> dict:
    from bicircular.bicircular import bicircular_matroid

    out = {}
    for G in enumerate_multigraphs(r, m, min_edges=m, connected=False):
        if any(G.degree(v) == 0 for v in G.vertices):
            continue
        B = bicircular_matroid(G)
        out.setdefault(matroid_signature(B), []).append(B)
    return out


def naive_is_bicircular(M: CircuitMatroid) -> bool:
    """Loops and coloops are always representable (balanced loops, pendant
    links), so strip them; what remains has no coloops, hence every graph
    component holds a bicycle and the graph has exactly rank-many vertices.
    Compare against every such graph up to isomorphism."""
    core = M.delete(M.loops | M.coloops)
    if core.size == 0:
        return True
    cands = _graph_matroids(core.full_rank, core.size).get(matroid_signature(core), [])
    return any(find_isomorphism(core, B) is not None for B in cands)


# -- shared instance families -------------------------------------------------

@lru_cache(maxsize=None)
def small_family() -> tuple:
    """Connected multigraphs with at most 5 vertices and 8 edges, one per
    isomorphism class."""
    return tuple(G for n in range(1, 6) for G in enumerate_multigraphs(n, 8))


@lru_cache(maxsize=None)
def two_connected_simple(max_vertices: int = 7) -> tuple:
    from bicircular.multigraph import is_2connected

    out = []
    for n in range(4, max_vertices + 1):
        for G in enumerate_multigraphs(n, n * (n - 1) // 2, loops=False, multiple=False):
            if is_2connected(G):
                out.append(G)
    return tuple(out)


def brute_circuit_elimination(circuits) -> tuple | None:
    """First (C1, C2, e) with no circuit inside (C1 | C2) - e, or None."""
    cs = [frozenset(c) for c in circuits]
    for C1, C2 in itertools.combinations(cs, 2):
        for e in C1 & C2:
            U = (C1 | C2) - {e}
            if not any(C <= U for C in cs):
                return (C1, C2, e)
    return None


def is_k2n_or_k2n_prime(G) -> bool:
    """si(G) is K_{2,n} or K_{2,n} plus the edge joining the two hubs; checked
    with networkx isomorphism."""
    import networkx as nx

    n = G.num_vertices - 2
    if n < 1:
        return False
    g = nx.Graph()
    g.add_nodes_from(G.vertices)
    g.add_edges_from(G.ends(e) for e in G.labels if not G.is_loop(e))
    k = nx.complete_bipartite_graph(2, n)
    if nx.is_isomorphic(g, k):
        return True
    k.add_edge(0, 1)
    return nx.is_isomorphic(g, k)


def brute_graph_isomorphic(G, H) -> bool:
    """Try every vertex bijection and compare edge multiplicities."""
    if G.num_vertices != H.num_vertices or G.num_edges != H.num_edges:
        return False
    from collections import Counter

    def mult(K):
        return Counter(frozenset(K.ends(e)) for e in K.labels)

    mg, mh = mult(G), mult(H)
    for perm in itertools.permutations(H.vertices):
        f = dict(zip(G.vertices, perm))
        if all(mh.get(frozenset(f[x] for x in k), 0) == c for k, c in mg.items()):
            return True
    return False


def all_labeled_multigraphs(n: int, m: int):
    """Every multigraph on vertices 0..n-1 with m edges (loops allowed), as a
    multiset of vertex pairs."""
    from bicircular.multigraph import MultiGraph

    slots = [(i, j) for i in range(n) for j in range(i, n)]
    for combo in itertools.combinations_with_replacement(slots, m):
        yield MultiGraph({k + 1: uv for k, uv in enumerate(combo)}, range(n))


def brute_matchings(G):
    """All matchings of G (sets of links with pairwise disjoint ends)."""
    links = [e for e in G.labels if not G.is_loop(e)]
    out = [frozenset()]
    for k in range(1, len(links) + 1):
        for S in itertools.combinations(links, k):
            ends = [v for e in S for v in G.ends(e)]
            if len(set(ends)) == 2 * k:
                out.append(frozenset(S))
    return out
