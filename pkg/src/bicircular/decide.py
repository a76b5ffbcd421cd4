"""Decision procedures: is a matroid bicircular, is it an excluded minor.

The bicircularity test decides each connected component separately. A
connected component with at least two elements and rank r can only be
represented on exactly r vertices (its graph is connected and contains a
cycle), so the search assigns elements to the loop and link slots of an
r-vertex graph, breaking vertex symmetry by order of first use.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from .bicircular import LoopBiasedGraph, bicircular_matroid, classify_graph_type, representation_closure
from .errors import InvalidInput, ResourceLimit
from .matroid import CircuitMatroid
from .multigraph import MultiGraph, _bicycle_masks, iter_bits, popcount, sorted_tokens

DEFAULT_ELEMENT_CAP = int(os.environ.get("BICIRCULAR_CAP", "12"))
DEFAULT_VERTEX_CAP = 10
YES = "yes"
NO = "no"


@dataclass
class DecisionReport:
    answer: str
    witness: LoopBiasedGraph | None = None
    stats: dict = field(default_factory=dict)
    exhaustive: bool = True

    @property
    def is_yes(self) -> bool:
        return self.answer == YES


def _add_stats(total: dict, part: dict):
    for k, v in part.items():
        total[k] = total.get(k, 0) + v


# ---------------------------------------------------------------------------
# component search
# ---------------------------------------------------------------------------

def _slots(r: int) -> list[tuple[int, int]]:
    return [(i, i) for i in range(r)] + [(i, j) for i in range(r) for j in range(i + 1, r)]


def _is_bicycle(ends, mask: int) -> bool:
    deg = {}
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in iter_bits(mask):
        a, b = ends[i]
        deg[a] = deg.get(a, 0) + 1
        deg[b] = deg.get(b, 0) + 1
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    if popcount(mask) != len(deg) + 1 or min(deg.values()) < 2:
        return False
    return len({find(x) for x in deg}) == 1


def _bicircular_rank(ends, mask: int) -> int:
    parent = {}
    edges = {}

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
    for i in iter_bits(mask):
        r = find(ends[i][0])
        edges[r] = edges.get(r, 0) + 1
    verts = {}
    for x in parent:
        r = find(x)
        verts[r] = verts.get(r, 0) + 1
    acyclic = sum(1 for r, nv in verts.items() if edges.get(r, 0) == nv - 1)
    return len(parent) - acyclic


class _ComponentSearch:
    """Backtracking over slot assignments for one connected component."""

    def __init__(self, ground: tuple, masks: tuple, r: int):
        self.ground = ground
        self.masks = masks
        self.r = r
        self.n = n = len(ground)
        M = CircuitMatroid._from_masks(ground, masks)
        self.M = M
        count = [0] * n
        for c in masks:
            for i in iter_bits(c):
                count[i] += 1
        self.order = self._greedy_order(count)
        pos = {el: k for k, el in enumerate(self.order)}
        self.closing = [[] for _ in range(n)]
        for c in masks:
            self.closing[max(pos[i] for i in iter_bits(c))].append(c)
        self.partners = [[j for j in range(n) if j != i and ((1 << i) | (1 << j)) in masks] for i in range(n)]
        self.prefix = [0] * (n + 1)
        for k, el in enumerate(self.order):
            self.prefix[k + 1] = self.prefix[k] | (1 << el)
        self.prefix_rank = [M._rank_mask(p) for p in self.prefix]
        self.prefix_circuits = [sum(1 for c in masks if c & ~p == 0) for p in self.prefix]
        self.slots = _slots(r)
        self.target = frozenset(masks)

    def _greedy_order(self, count) -> list[int]:
        """Densest element first, then whichever element closes the most
        circuits on the placed set, so circuit checks fire early."""
        placed = 0
        order = []
        left = set(range(self.n))
        while left:
            def score(i):
                t = placed | (1 << i)
                closed = sum(1 for c in self.masks if (c >> i) & 1 and c & ~t == 0)
                return (-closed, -count[i], i)
            i = min(left, key=score)
            order.append(i)
            left.discard(i)
            placed |= 1 << i
        return order

    def _allowed(self, ends, k):
        """Slots for the k-th element compatible with the circuits it closes:
        both ends lie on the rest of the circuit, and every degree-1 vertex
        of the rest is an end."""
        allowed = None
        for c in self.closing[k]:
            deg = {}
            for i in iter_bits(c):
                if ends[i] is None:
                    continue
                a, b = ends[i]
                deg[a] = deg.get(a, 0) + 1
                deg[b] = deg.get(b, 0) + 1
            need = [v for v, d in deg.items() if d == 1]
            if len(need) > 2:
                return set()
            verts = sorted(deg)
            ok = set()
            for x in range(len(verts)):
                for y in range(x, len(verts)):
                    slot = (verts[x], verts[y])
                    if all(v in slot for v in need):
                        ok.add(slot)
            allowed = ok if allowed is None else allowed & ok
        return allowed

    def branches(self) -> list[tuple[int, int]]:
        """Legal slots for the first element, in search order."""
        return [s for s in self.slots if self._symmetry_ok(s, -1)]

    @staticmethod
    def _symmetry_ok(slot, maxused) -> bool:
        a, b = slot
        if a > maxused + 1:
            return False
        return b <= max(maxused, a) + 1

    def run(self, first=None) -> tuple[list | None, dict]:
        stats = {"nodes": 0, "leaves": 0, "pruned_parallel": 0, "pruned_circuit": 0,
                 "pruned_rank": 0, "pruned_bicycle": 0, "pruned_cover": 0}
        ends = [None] * self.n
        found = self._dfs(0, -1, ends, stats, first)
        return found, stats

    def _dfs(self, k, maxused, ends, stats, first):
        n, r = self.n, self.r
        el = self.order[k]
        slots = [first] if (k == 0 and first is not None) else self.slots
        allowed = self._allowed(ends, k) if self.closing[k] else None
        for slot in slots:
            if not self._symmetry_ok(slot, maxused):
                continue
            if allowed is not None and slot not in allowed:
                stats["pruned_circuit"] += 1
                continue
            stats["nodes"] += 1
            a, b = slot
            if self.partners[el]:
                if a != b or any(ends[p] is not None and ends[p] != slot for p in self.partners[el]):
                    stats["pruned_parallel"] += 1
                    continue
            ends[el] = slot
            used = max(maxused, b)
            remaining = n - k - 1
            if r - 1 - used > 2 * remaining:
                stats["pruned_cover"] += 1
                ends[el] = None
                continue
            if any(not _is_bicycle(ends, c) for c in self.closing[k]):
                stats["pruned_circuit"] += 1
                ends[el] = None
                continue
            if _bicircular_rank(ends, self.prefix[k + 1]) != self.prefix_rank[k + 1]:
                stats["pruned_rank"] += 1
                ends[el] = None
                continue
            if self._bicycle_count(ends, k) != self.prefix_circuits[k + 1]:
                # every placed circuit is a bicycle, so a surplus bicycle is not a circuit
                stats["pruned_bicycle"] += 1
                ends[el] = None
                continue
            if k == n - 1:
                stats["leaves"] += 1
                if used == r - 1 and self._exact(ends):
                    return list(ends)
            else:
                found = self._dfs(k + 1, used, ends, stats, first)
                if found is not None:
                    return found
            ends[el] = None
        return None

    def _bicycle_count(self, ends, k) -> int:
        placed = {self.order[j]: ends[self.order[j]] for j in range(k + 1)}
        return len(_bicycle_masks(MultiGraph(placed)))

    def _exact(self, ends) -> bool:
        G = MultiGraph({i: ends[i] for i in range(self.n)})
        return bicircular_matroid(G).circuit_masks == self.target


def _run_branch(args):
    ground, masks, r, slot = args
    return _ComponentSearch(ground, masks, r).run(slot)


def _decide_component(M: CircuitMatroid, workers: int, max_nodes: int | None):
    """Return (ends by element or None, stats) for a connected component."""
    r = M.full_rank
    search = _ComponentSearch(M.ground, tuple(sorted(M.circuit_masks)), r)
    branches = search.branches()
    total = {}
    if workers > 1 and len(branches) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_branch, [(M.ground, search.masks, r, s) for s in branches]))
    else:
        results = None
    for i, slot in enumerate(branches):
        found, stats = results[i] if results is not None else search.run(slot)
        _add_stats(total, stats)
        if found is not None:
            return found, total
        if max_nodes is not None and total.get("nodes", 0) > max_nodes:
            raise ResourceLimit(f"search exceeded {max_nodes} nodes")
    return None, total


def is_bicircular(M: CircuitMatroid, cap: int = None, workers: int = 1, max_nodes: int | None = None,
                  vertex_cap: int = DEFAULT_VERTEX_CAP) -> DecisionReport:
    """Search for a loop-biased graph whose bicircular matroid is M, label for label.

    Matroid loops become balanced loops on fresh vertices and coloops become
    single links on two fresh vertices."""
    cap = DEFAULT_ELEMENT_CAP if cap is None else cap
    if M.size > cap:
        raise ResourceLimit(f"{M.size} elements exceeds decision cap {cap}")
    edges = {}
    balanced = []
    stats = {"components": 0}
    nxt = 0
    for comp in M.components():
        stats["components"] += 1
        comp = sorted_tokens(comp)
        if len(comp) == 1:
            e = comp[0]
            if e in M.loops:
                edges[e] = (nxt,)
                balanced.append(e)
                nxt += 1
            else:
                edges[e] = (nxt, nxt + 1)
                nxt += 2
            continue
        sub = M.restrict(comp)
        if sub.full_rank > vertex_cap:
            raise ResourceLimit(f"rank {sub.full_rank} exceeds vertex cap {vertex_cap}")
        found, st = _decide_component(sub, workers, max_nodes)
        _add_stats(stats, st)
        if found is None:
            return DecisionReport(NO, None, stats, True)
        for i, (a, b) in enumerate(found):
            edges[sub.ground[i]] = (nxt + a, nxt + b)
        nxt += sub.full_rank
    G = MultiGraph(edges, range(nxt))
    witness = LoopBiasedGraph(G, balanced)
    if bicircular_matroid(witness) != M:
        raise AssertionError("witness does not regenerate the input matroid")
    return DecisionReport(YES, witness, stats, True)


# ---------------------------------------------------------------------------
# excluded minors
# ---------------------------------------------------------------------------

@dataclass
class ExcludedMinorReport:
    non_bicircular: DecisionReport
    minor_checks: dict = field(default_factory=dict)  # (element, "delete"|"contract") -> DecisionReport
    pruned_by: str | None = None

    @property
    def is_excluded_minor(self) -> bool:
        if self.pruned_by is not None or self.non_bicircular.answer != NO:
            return False
        return all(r.answer == YES for r in self.minor_checks.values())

    @property
    def exhaustive(self) -> bool:
        return self.non_bicircular.exhaustive and all(r.exhaustive for r in self.minor_checks.values())

    @property
    def verdict(self) -> str:
        if self.is_excluded_minor:
            return "EXCLUDED MINOR (exhaustive)" if self.exhaustive else "EXCLUDED MINOR (non-exhaustive)"
        return "NOT AN EXCLUDED MINOR"


def excluded_minor_prune(M: CircuitMatroid) -> str | None:
    """Reason why M cannot be an excluded minor, from necessary conditions
    valid for excluded minors of rank at least three: at most three parallel
    pairs, and no line with more than three lonely elements."""
    if M.full_rank < 3:
        return None
    pairs = sum(comb(len(c), 2) for c in M.parallel_classes())
    if pairs > 3:
        return "more than three parallel pairs"
    if M.size <= 16:
        for L in M.nontrivial_lines():
            if len(M.lonely_elements(L)) > 3:
                return "a line with more than three lonely elements"
    return None


def verify_excluded_minor(M: CircuitMatroid, cap: int = None, workers: int = 1,
                          max_nodes: int | None = None, use_prunes: bool = True) -> ExcludedMinorReport:
    """M is an excluded minor when it is not bicircular but every
    single-element deletion and contraction is. Checks stop at the first
    minor that is not bicircular."""
    if use_prunes:
        reason = excluded_minor_prune(M)
        if reason is not None:
            return ExcludedMinorReport(DecisionReport(NO, None, {}, False), {}, reason)
    top = is_bicircular(M, cap=cap, workers=workers, max_nodes=max_nodes)
    report = ExcludedMinorReport(top)
    if top.answer == YES:
        return report
    for e in M.ground:
        for op in ("delete", "contract"):
            N = M.delete({e}) if op == "delete" else M.contract({e})
            res = is_bicircular(N, cap=cap, workers=workers, max_nodes=max_nodes)
            report.minor_checks[(e, op)] = res
            if res.answer == NO:
                return report
    return report


# ---------------------------------------------------------------------------
# bounds and rank two
# ---------------------------------------------------------------------------

def element_bound(r: int) -> int:
    """Largest possible size of a rank-r excluded minor: 3*C(r,2) + r + 4."""
    if r < 0:
        raise InvalidInput("rank must be nonnegative")
    return 3 * comb(r, 2) + r + 4


def rank_bound() -> int:
    """Every excluded minor has rank at most this."""
    return 7


def _partitions(n: int, max_part: int | None = None):
    if n == 0:
        yield ()
        return
    max_part = n if max_part is None else max_part
    for k in range(min(n, max_part), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def rank2_matroid(loops: int, classes) -> CircuitMatroid:
    """Rank-2 matroid with ``loops`` loops and parallel classes of the given
    sizes, on ground set 1..n."""
    classes = list(classes)
    if len(classes) < 2:
        raise InvalidInput("a rank-2 matroid needs at least two parallel classes")
    label = 1
    circuits = []
    for _ in range(loops):
        circuits.append({label})
        label += 1
    groups = []
    for size in classes:
        groups.append(list(range(label, label + size)))
        label += size
    for g in groups:
        circuits.extend({a, b} for a, b in itertools.combinations(g, 2))
    for g1, g2, g3 in itertools.combinations(groups, 3):
        circuits.extend({a, b, c} for a in g1 for b in g2 for c in g3)
    return CircuitMatroid(range(1, label), circuits)


def rank2_matroids(n_max: int):
    """One rank-2 matroid per isomorphism class on at most ``n_max`` elements."""
    for n in range(2, n_max + 1):
        for loops in range(0, n - 1):
            for parts in _partitions(n - loops):
                if len(parts) >= 2:
                    yield rank2_matroid(loops, parts)


def rank2_excluded_minors(n_max: int) -> list[CircuitMatroid]:
    if n_max > 10:
        raise ResourceLimit("rank-2 enumeration is capped at 10 elements")
    return [M for M in rank2_matroids(n_max) if verify_excluded_minor(M, use_prunes=False).is_excluded_minor]


# ---------------------------------------------------------------------------
# matroid type
# ---------------------------------------------------------------------------

def matroid_type(M: CircuitMatroid, vertex_cap: int = DEFAULT_VERTEX_CAP, max_graphs: int = 5000) -> int:
    """1, 2 or 3, from the graph types found in the representation closure
    of one witness."""
    if not M.is_connected():
        raise InvalidInput("matroid_type needs a connected matroid")
    rep = is_bicircular(M)
    if rep.answer != YES:
        raise InvalidInput("matroid is not bicircular")
    closure = representation_closure(rep.witness.graph, cap_vertices=vertex_cap, max_graphs=max_graphs)
    types = {classify_graph_type(G).type for G in closure}
    return min(types)


__all__ = [
    "DecisionReport",
    "ExcludedMinorReport",
    "element_bound",
    "excluded_minor_prune",
    "is_bicircular",
    "matroid_type",
    "rank2_excluded_minors",
    "rank2_matroid",
    "rank2_matroids",
    "rank_bound",
    "verify_excluded_minor",
]

