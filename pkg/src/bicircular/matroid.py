"""Matroids given by a ground set and a circuit family.

Circuits are stored as bitmasks over the sorted ground set. For ground sets
up to ``TABLE_CAP`` elements the full rank function is tabulated once with
numpy (dependence closure followed by a subset-max transform); larger
matroids fall back to a memoised greedy rank oracle.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import InvalidInput, ResourceLimit
from .multigraph import iter_bits, popcount, sort_key, sorted_tokens

TABLE_CAP = 20
VALIDATION_CAP = 14
SEPARATION_CAP = 16
MINOR_CAP = 12


def _bit_table(n: int) -> np.ndarray:
    size = 1 << n
    x = np.arange(size, dtype=np.int64)
    counts = np.zeros(size, dtype=np.int16)
    for i in range(n):
        counts += ((x >> i) & 1).astype(np.int16)
    return counts


def _views(a: np.ndarray, i: int):
    v = a.reshape(-1, 2, 1 << i)
    return v[:, 0, :], v[:, 1, :]


def _superset_or(a: np.ndarray, n: int) -> np.ndarray:
    """out[S] = any(a[T] for T subset of S)."""
    a = a.copy()
    for i in range(n):
        lo, hi = _views(a, i)
        hi |= lo
    return a


def _subset_max(a: np.ndarray, n: int) -> np.ndarray:
    a = a.copy()
    for i in range(n):
        lo, hi = _views(a, i)
        np.maximum(hi, lo, out=hi)
    return a


def _minimal(dep: np.ndarray, n: int) -> np.ndarray:
    """Members of ``dep`` none of whose one-element-smaller subsets is in ``dep``."""
    m = dep.copy()
    for i in range(n):
        lo_d, _ = _views(dep, i)
        _, hi_m = _views(m, i)
        hi_m &= ~lo_d
    return m


@dataclass(frozen=True)
class AxiomViolation:
    """C1: the empty set is a circuit. C2: the first circuit lies inside the
    second. C3: the pair shares ``element`` but their union minus it holds
    no circuit."""

    clause: str
    circuits: tuple
    element: object = None

    def __str__(self):
        sets = " and ".join(str(sorted_tokens(c)) for c in self.circuits)
        tail = f" on {self.element!r}" if self.element is not None else ""
        return f"({self.clause}) {sets}{tail}"


def _compress(mask: int, positions: list[int]) -> int:
    """Re-index ``mask`` onto the kept ``positions`` (old bit -> new bit)."""
    out = 0
    for new, old in enumerate(positions):
        if (mask >> old) & 1:
            out |= 1 << new
    return out


class CircuitMatroid:
    """Matroid on a finite label set, defined by its circuits.

    The circuit axioms are checked on construction: exhaustively up to
    ``validation_cap`` elements and on a seeded sample of circuit pairs above.
    """

    __slots__ = ("ground", "_index", "_masks", "_hash", "__dict__")

    def __init__(self, ground, circuits, *, validate: bool = True, validation_cap: int = VALIDATION_CAP):
        ground = tuple(sorted_tokens(set(ground)))
        index = {e: i for i, e in enumerate(ground)}
        masks = set()
        for c in circuits:
            m = 0
            for e in c:
                if e not in index:
                    raise InvalidInput(f"circuit element {e!r} is not in the ground set")
                m |= 1 << index[e]
            masks.add(m)
        self.ground = ground
        self._index = index
        self._masks = frozenset(masks)
        self._hash = None
        if validate:
            bad = self.axiom_violation(validation_cap)
            if bad is not None:
                raise InvalidInput(f"not a circuit family: {bad}")

    @classmethod
    def _from_masks(cls, ground: tuple, masks) -> CircuitMatroid:
        self = object.__new__(cls)
        self.ground = ground
        self._index = {e: i for i, e in enumerate(ground)}
        self._masks = frozenset(masks)
        self._hash = None
        return self

    @classmethod
    def from_rank_table(cls, ground, table: np.ndarray) -> CircuitMatroid:
        ground = tuple(ground)
        n = len(ground)
        dep = table < _bit_table(n)
        circ = _minimal(dep, n)
        M = cls._from_masks(ground, (int(s) for s in np.nonzero(circ)[0]))
        M.__dict__["_rank_table"] = table.astype(np.int16)
        return M

    @classmethod
    def free(cls, ground) -> CircuitMatroid:
        return cls(ground, [])

    @classmethod
    def uniform(cls, r: int, ground) -> CircuitMatroid:
        ground = list(ground)
        return cls(ground, [c for c in itertools.combinations(ground, r + 1)])

    # -- basics ----------------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.ground)

    def __len__(self):
        return len(self.ground)

    @property
    def circuit_masks(self) -> frozenset:
        return self._masks

    @cached_property
    def circuits(self) -> frozenset:
        return frozenset(self.unmask(m) for m in self._masks)

    def sorted_circuits(self) -> list[tuple]:
        return sorted((tuple(sorted_tokens(c)) for c in self.circuits),
                      key=lambda c: (len(c), [sort_key(x) for x in c]))

    def mask(self, X) -> int:
        m = 0
        for e in X:
            try:
                m |= 1 << self._index[e]
            except KeyError:
                raise InvalidInput(f"{e!r} is not in the ground set") from None
        return m

    def unmask(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in iter_bits(mask))

    @property
    def full_mask(self) -> int:
        return (1 << len(self.ground)) - 1

    def __eq__(self, other):
        if not isinstance(other, CircuitMatroid):
            return NotImplemented
        return self.ground == other.ground and self._masks == other._masks

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ground, self._masks))
        return self._hash

    def __repr__(self):
        return f"CircuitMatroid(n={self.size}, rank={self.full_rank}, circuits={len(self._masks)})"

    # -- validation ------------------------------------------------------
    def axiom_violation(self, cap: int = VALIDATION_CAP, samples: int = 2000, seed: int = 0):
        """The first violated circuit axiom as an AxiomViolation, or None.

        Elimination is checked on every circuit pair up to ``cap`` elements
        and on a seeded sample of pairs above it."""
        masks = sorted(self._masks)
        if 0 in self._masks:
            return AxiomViolation("C1", (frozenset(),))
        ms = set(masks)
        for c in masks:
            sub = (c - 1) & c
            while sub:
                if sub in ms:
                    return AxiomViolation("C2", (self.unmask(sub), self.unmask(c)))
                sub = (sub - 1) & c
        n = self.size
        if n <= min(cap, TABLE_CAP):
            dep = self._dep_table
            arr = np.array(masks, dtype=np.int64)
            if len(arr) > 1:
                union = arr[:, None] | arr[None, :]
                inter = arr[:, None] & arr[None, :]
                np.fill_diagonal(inter, 0)
                for i in range(n):
                    bit = 1 << i
                    hit = (inter & bit) != 0
                    if not hit.any():
                        continue
                    ok = dep[(union & ~bit)[hit]]
                    if not ok.all():
                        k = int(np.nonzero(~ok)[0][0])
                        a, b = np.argwhere(hit)[k]
                        return AxiomViolation("C3", (self.unmask(int(arr[a])), self.unmask(int(arr[b]))),
                                              self.ground[i])
            return None
        rng = random.Random(seed)
        pairs = [(a, b) for a, b in itertools.combinations(masks, 2) if a & b]
        if len(pairs) > samples:
            pairs = rng.sample(pairs, samples)
        for a, b in pairs:
            for i in iter_bits(a & b):
                u = (a | b) & ~(1 << i)
                if not any(c & ~u == 0 for c in masks):
                    return AxiomViolation("C3", (self.unmask(a), self.unmask(b)), self.ground[i])
        return None

    # -- rank ------------------------------------------------------------
    @cached_property
    def _dep_table(self) -> np.ndarray:
        n = self.size
        dep = np.zeros(1 << n, dtype=bool)
        if self._masks:
            dep[np.fromiter(self._masks, dtype=np.int64)] = True
        return _superset_or(dep, n)

    @cached_property
    def _rank_table(self) -> np.ndarray:
        n = self.size
        if n > TABLE_CAP:
            raise ResourceLimit(f"rank table for {n} elements exceeds cap {TABLE_CAP}")
        r = np.where(self._dep_table, 0, _bit_table(n)).astype(np.int16)
        return _subset_max(r, n)

    @cached_property
    def _circuits_by_element(self):
        out = [[] for _ in self.ground]
        for c in self._masks:
            for i in iter_bits(c):
                out[i].append(c)
        return out

    @cached_property
    def _rank_memo(self) -> dict:
        return {}

    def _rank_mask(self, mask: int) -> int:
        if self.size <= TABLE_CAP:
            return int(self._rank_table[mask])
        memo = self._rank_memo
        r = memo.get(mask)
        if r is None:
            ind = 0
            by = self._circuits_by_element
            for i in iter_bits(mask):
                t = ind | (1 << i)
                if not any(c & ~t == 0 for c in by[i]):
                    ind = t
            r = memo[mask] = popcount(ind)
        return r

    def rank(self, X=None) -> int:
        return self._rank_mask(self.full_mask if X is None else self.mask(X))

    @property
    def full_rank(self) -> int:
        return self._rank_mask(self.full_mask)

    def corank(self, X) -> int:
        """Rank of X in the dual."""
        m = self.mask(X)
        return popcount(m) + self._rank_mask(self.full_mask & ~m) - self.full_rank

    def is_independent(self, X) -> bool:
        m = self.mask(X)
        return self._rank_mask(m) == popcount(m)

    def is_circuit(self, X) -> bool:
        return self.mask(X) in self._masks

    def closure(self, X) -> frozenset:
        m = self.mask(X)
        r = self._rank_mask(m)
        out = m
        for i in range(self.size):
            if not (m >> i) & 1 and self._rank_mask(m | (1 << i)) == r:
                out |= 1 << i
        return self.unmask(out)

    @property
    def loops(self) -> frozenset:
        return frozenset(self.ground[i] for i in range(self.size) if (1 << i) in self._masks)

    @property
    def coloops(self) -> frozenset:
        covered = 0
        for c in self._masks:
            covered |= c
        return self.unmask(self.full_mask & ~covered)

    def bases(self) -> list[frozenset]:
        r = self.full_rank
        return [frozenset(b) for b in itertools.combinations(self.ground, r) if self.is_independent(b)]

    # -- minors and duality ---------------------------------------------
    def _check(self, Z) -> frozenset:
        Z = frozenset(Z)
        self.mask(Z)
        return Z

    def delete(self, Z) -> CircuitMatroid:
        z = self.mask(self._check(Z))
        keep = [i for i in range(self.size) if not (z >> i) & 1]
        ground = tuple(self.ground[i] for i in keep)
        return CircuitMatroid._from_masks(ground, (_compress(c, keep) for c in self._masks if not c & z))

    def restrict(self, X) -> CircuitMatroid:
        X = self._check(X)
        return self.delete(frozenset(self.ground) - X)

    def contract(self, Z) -> CircuitMatroid:
        """Circuits of M/Z are the minimal nonempty sets C - Z."""
        z = self.mask(self._check(Z))
        keep = [i for i in range(self.size) if not (z >> i) & 1]
        ground = tuple(self.ground[i] for i in keep)
        cand = sorted({c & ~z for c in self._masks if c & ~z}, key=popcount)
        minimal = []
        for c in cand:
            if not any(m & ~c == 0 for m in minimal):
                minimal.append(c)
        return CircuitMatroid._from_masks(ground, (_compress(c, keep) for c in minimal))

    def minor(self, contract=(), delete=()) -> CircuitMatroid:
        return self.contract(contract).delete(delete)

    def dual(self) -> CircuitMatroid:
        n = self.size
        if n > TABLE_CAP:
            raise ResourceLimit(f"dual of {n} elements exceeds cap {TABLE_CAP}")
        r = self._rank_table
        full = int(r[-1])
        dual_rank = (_bit_table(n) + r[::-1] - full).astype(np.int16)
        return CircuitMatroid.from_rank_table(self.ground, dual_rank)

    def relabel(self, mapping) -> CircuitMatroid:
        new = [mapping.get(e, e) for e in self.ground]
        if len(set(new)) != len(new):
            raise InvalidInput("relabelling must be injective")
        return CircuitMatroid(new, ([mapping.get(e, e) for e in c] for c in self.circuits), validate=False)

    # -- classes and connectivity ---------------------------------------
    def parallel_classes(self) -> list[frozenset]:
        """Classes of pairwise parallel non-loop elements (singletons included)."""
        loops = self.mask(self.loops)
        classes = []
        seen = 0
        for i in range(self.size):
            if (loops >> i) & 1 or (seen >> i) & 1:
                continue
            cls = 1 << i
            for j in range(i + 1, self.size):
                if not (loops >> j) & 1 and ((1 << i) | (1 << j)) in self._masks:
                    cls |= 1 << j
            seen |= cls
            classes.append(self.unmask(cls))
        return classes

    def series_classes(self) -> list[frozenset]:
        return self.dual().parallel_classes()

    def cosimplify(self) -> CircuitMatroid:
        """Contract every coloop and all but the least element of each series class."""
        Z = set(self.coloops)
        for cls in self.series_classes():
            Z.update(sorted_tokens(cls)[1:])
        return self.contract(Z)

    def simplify(self) -> CircuitMatroid:
        Z = set(self.loops)
        for cls in self.parallel_classes():
            Z.update(sorted_tokens(cls)[1:])
        return self.delete(Z)

    def components(self) -> list[frozenset]:
        parent = list(range(self.size))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self._masks:
            bits = list(iter_bits(c))
            for b in bits[1:]:
                ra, rb = find(bits[0]), find(b)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for i in range(self.size):
            groups.setdefault(find(i), []).append(i)
        return [frozenset(self.ground[i] for i in g) for _, g in sorted(groups.items())]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def _sep_arrays(self):
        n = self.size
        if n > SEPARATION_CAP:
            raise ResourceLimit(f"{n} elements exceeds separation enumeration cap {SEPARATION_CAP}")
        r = self._rank_table.astype(np.int32)
        full = int(r[-1])
        lam = r + r[::-1] - full
        return r, lam

    def vertical_k_separations(self, k: int) -> list[MatroidSeparation]:
        """All (A, B) with |A|,|B| >= k, r(A)+r(B)-r(E) < k and r(A), r(B) >= k.

        Each unordered pair is reported once, with the side holding the least
        element first."""
        r, lam = self._sep_arrays()
        n = self.size
        if n == 0:
            return []
        sizes = _bit_table(n)
        idx = np.arange(1 << n)
        ok = ((idx & 1) == 1) & (lam < k) & (sizes >= k) & (sizes[::-1] >= k) & (r >= k) & (r[::-1] >= k)
        return [self._separation(int(a), int(lam[a])) for a in np.nonzero(ok)[0]]

    def _separation(self, a: int, lam: int) -> MatroidSeparation:
        b = self.full_mask & ~a
        return MatroidSeparation(self.unmask(a), self.unmask(b), lam + 1,
                                 self._rank_mask(a), self._rank_mask(b))

    def is_vertically_3_connected(self) -> bool:
        return not self.vertical_k_separations(1) and not self.vertical_k_separations(2)

    def two_separations(self) -> list[MatroidSeparation]:
        r, lam = self._sep_arrays()
        n = self.size
        if n == 0:
            return []
        sizes = _bit_table(n)
        idx = np.arange(1 << n)
        ok = ((idx & 1) == 1) & (lam < 2) & (sizes >= 2) & (sizes[::-1] >= 2)
        return [self._separation(int(a), int(lam[a])) for a in np.nonzero(ok)[0]]

    def is_parallel_set(self, X) -> bool:
        """All elements of X lie in one rank-one flat (loops allowed)."""
        return self.rank(X) <= 1

    def is_series_set(self, X) -> bool:
        return self.corank(X) <= 1

    def essential_2_separations(self) -> list[MatroidSeparation]:
        out = []
        for s in self.two_separations():
            if any(self.is_parallel_set(side) or self.is_series_set(side) for side in (s.side_a, s.side_b)):
                continue
            out.append(s)
        return out

    def is_essentially_3_connected(self) -> bool:
        return not self.essential_2_separations()

    # -- flats, lines, clones -------------------------------------------
    @cached_property
    def _closed_table(self) -> np.ndarray:
        n = self.size
        r = self._rank_table
        closed = np.ones(1 << n, dtype=bool)
        for i in range(n):
            lo_c, _ = _views(closed, i)
            lo_r, hi_r = _views(r, i)
            lo_c &= hi_r > lo_r
        return closed

    def flats(self, rank=None) -> list[frozenset]:
        closed = self._closed_table
        if rank is not None:
            closed = closed & (self._rank_table == rank)
        return [self.unmask(int(s)) for s in np.nonzero(closed)[0]]

    def cyclic_flats(self) -> list[frozenset]:
        n = self.size
        r = self._rank_table
        cyclic = np.ones(1 << n, dtype=bool)
        for i in range(n):
            lo_r, hi_r = _views(r, i)
            _, hi_c = _views(cyclic, i)
            hi_c &= lo_r == hi_r
        return [self.unmask(int(s)) for s in np.nonzero(cyclic & self._closed_table)[0]]

    def lines(self) -> list[frozenset]:
        """Rank-2 flats."""
        return self.flats(rank=2)

    def rank_one_flats(self, X=None) -> list[frozenset]:
        """Parallel classes of non-loops inside X."""
        classes = self.parallel_classes()
        if X is None:
            return classes
        X = frozenset(X)
        return [c for c in classes if c <= X]

    def is_nontrivial_line(self, L) -> bool:
        L = frozenset(L)
        return self.rank(L) == 2 and self.closure(L) == L and len(self.rank_one_flats(L)) >= 3

    def nontrivial_lines(self) -> list[frozenset]:
        return [L for L in self.lines() if len(self.rank_one_flats(L)) >= 3]

    def lonely_elements(self, L) -> frozenset:
        """Elements of the line L that lie in no adjacent non-trivial line and
        have no parallel partner (loops are never lonely)."""
        L = frozenset(L)
        if self.rank(L) != 2 or self.closure(L) != L:
            raise InvalidInput("not a line (rank-2 flat)")
        loops = self.loops
        partner = {e for c in self.parallel_classes() if len(c) > 1 for e in c}
        adjacent = [L2 for L2 in self.nontrivial_lines() if L2 != L and self.rank(L | L2) == 3]
        return frozenset(e for e in L if e not in loops and e not in partner
                         and not any(e in L2 for L2 in adjacent))

    def are_clones(self, e, f) -> bool:
        """Swapping e and f maps circuits to circuits."""
        if e == f:
            return True
        pair = self.mask((e, f))
        for c in self._masks:
            if popcount(c & pair) == 1 and (c ^ pair) not in self._masks:
                return False
        return True

    def are_clones_by_cyclic_flats(self, e, f) -> bool:
        return all((e in F) == (f in F) for F in self.cyclic_flats())


@dataclass(frozen=True)
class MatroidSeparation:
    side_a: frozenset
    side_b: frozenset
    order: int
    rank_a: int
    rank_b: int

    def is_vertical(self, k: int) -> bool:
        return self.rank_a >= k and self.rank_b >= k


# ---------------------------------------------------------------------------
# sums
# ---------------------------------------------------------------------------

def _check_basepoint(M1: CircuitMatroid, M2: CircuitMatroid, e):
    common = set(M1.ground) & set(M2.ground)
    if common != {e}:
        raise InvalidInput(f"ground sets must meet exactly in {{{e!r}}}, they meet in {sorted_tokens(common)}")
    for M in (M1, M2):
        if e in M.loops or e in M.coloops:
            raise InvalidInput(f"basepoint {e!r} is a loop or coloop")


def _glued(M1, M2, e):
    with_e1 = [c for c in M1.circuits if e in c]
    with_e2 = [c for c in M2.circuits if e in c]
    return [(c1 | c2) - {e} for c1 in with_e1 for c2 in with_e2]


def two_sum(M1: CircuitMatroid, M2: CircuitMatroid, e) -> CircuitMatroid:
    _check_basepoint(M1, M2, e)
    circuits = [c for c in M1.circuits if e not in c] + [c for c in M2.circuits if e not in c]
    circuits += _glued(M1, M2, e)
    ground = (set(M1.ground) | set(M2.ground)) - {e}
    return CircuitMatroid(ground, circuits, validate=False)


def parallel_connection(M1: CircuitMatroid, M2: CircuitMatroid, e) -> CircuitMatroid:
    _check_basepoint(M1, M2, e)
    circuits = list(M1.circuits) + list(M2.circuits) + _glued(M1, M2, e)
    return CircuitMatroid(set(M1.ground) | set(M2.ground), circuits, validate=False)


def direct_sum(*ms: CircuitMatroid) -> CircuitMatroid:
    ground = []
    circuits = []
    for M in ms:
        ground.extend(M.ground)
        circuits.extend(M.circuits)
    if len(set(ground)) != len(ground):
        raise InvalidInput("direct sum needs disjoint ground sets")
    return CircuitMatroid(ground, circuits, validate=False)


# ---------------------------------------------------------------------------
# twins and disagreement sets
# ---------------------------------------------------------------------------

def _same_ground(M: CircuitMatroid, N: CircuitMatroid):
    if M.ground != N.ground:
        raise InvalidInput("matroids must share a ground set")


def minimal_disagreement_sets(M: CircuitMatroid, N: CircuitMatroid) -> list[frozenset]:
    """Inclusion-minimal sets on which the two rank functions differ."""
    _same_ground(M, N)
    n = M.size
    dis = M._rank_table != N._rank_table
    below = _superset_or(dis, n)
    proper = np.zeros_like(dis)
    for i in range(n):
        lo_b, _ = _views(below, i)
        _, hi_p = _views(proper, i)
        hi_p |= lo_b
    minimal = dis & ~proper
    out = [M.unmask(int(s)) for s in np.nonzero(minimal)[0]]
    return sorted(out, key=lambda s: (len(s), [sort_key(x) for x in sorted_tokens(s)]))


@dataclass(frozen=True)
class TwinCertificate:
    """M and N agree after contracting any single element of X."""

    matroid_m: CircuitMatroid
    matroid_n: CircuitMatroid
    X: frozenset

    def __post_init__(self):
        _same_ground(self.matroid_m, self.matroid_n)
        for e in sorted_tokens(self.X):
            if self.matroid_m.contract({e}) != self.matroid_n.contract({e}):
                raise InvalidInput(f"M/{e!r} != N/{e!r}")


def twin_check(M: CircuitMatroid, N: CircuitMatroid, X) -> TwinCertificate | None:
    _same_ground(M, N)
    try:
        return TwinCertificate(M, N, frozenset(X))
    except InvalidInput as exc:
        if "share a ground set" in str(exc):
            raise
        return None


# ---------------------------------------------------------------------------
# isomorphism and minors
# ---------------------------------------------------------------------------

def _element_profiles(M: CircuitMatroid):
    n = M.size
    prof = []
    for i in range(n):
        sizes = {}
        for c in M._circuits_by_element[i]:
            k = popcount(c)
            sizes[k] = sizes.get(k, 0) + 1
        prof.append(tuple(sorted(sizes.items())))
    return prof


def matroid_signature(M: CircuitMatroid):
    """Cheap isomorphism invariant."""
    return (M.size, M.full_rank, tuple(sorted(popcount(c) for c in M._masks)),
            tuple(sorted(_element_profiles(M))))


def find_isomorphism(M: CircuitMatroid, N: CircuitMatroid) -> dict | None:
    """A circuit-preserving bijection ground(M) -> ground(N), or None."""
    if matroid_signature(M) != matroid_signature(N):
        return None
    n = M.size
    pm, pn = _element_profiles(M), _element_profiles(N)
    # most constrained first: rare profiles, then many circuits
    freq = {}
    for p in pm:
        freq[p] = freq.get(p, 0) + 1
    order = sorted(range(n), key=lambda i: (freq[pm[i]], -sum(c for _, c in pm[i]), i))
    cands = [[j for j in range(n) if pn[j] == pm[i]] for i in range(n)]
    cm = M._circuits_by_element
    nmasks, mmasks = N._masks, M._masks
    cn = N._circuits_by_element
    image = [-1] * n
    pre = [-1] * n

    def consistent(i):
        dom = 0
        rng = 0
        for x in range(n):
            if image[x] >= 0:
                dom |= 1 << x
                rng |= 1 << image[x]
        for c in cm[i]:
            if c & ~dom == 0:
                t = 0
                for x in iter_bits(c):
                    t |= 1 << image[x]
                if t not in nmasks:
                    return False
        for c in cn[image[i]]:
            if c & ~rng == 0:
                t = 0
                for y in iter_bits(c):
                    t |= 1 << pre[y]
                if t not in mmasks:
                    return False
        return True

    def bt(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if pre[j] >= 0:
                continue
            image[i], pre[j] = j, i
            if consistent(i) and bt(k + 1):
                return True
            image[i], pre[j] = -1, -1
        return False

    if bt(0):
        return {M.ground[i]: N.ground[image[i]] for i in range(n)}
    return None


def is_isomorphic(M: CircuitMatroid, N: CircuitMatroid) -> bool:
    return find_isomorphism(M, N) is not None


def has_minor(M: CircuitMatroid, N: CircuitMatroid, cap: int = MINOR_CAP) -> bool:
    """Exhaustive search for a minor of M isomorphic to N: coindependent
    deletion sets first, then independent contraction sets."""
    if M.size > cap:
        raise ResourceLimit(f"{M.size} elements exceeds minor-search cap {cap}")
    nd = (M.size - M.full_rank) - (N.size - N.full_rank)
    nc = M.full_rank - N.full_rank
    if nd < 0 or nc < 0:
        return False
    sig = matroid_signature(N)
    seen = set()
    full = M.full_rank
    for D in itertools.combinations(M.ground, nd):
        if M.rank(frozenset(M.ground) - set(D)) != full:
            continue
        Md = M.delete(D)
        for C in itertools.combinations(Md.ground, nc):
            if not Md.is_independent(C):
                continue
            minor = Md.contract(C)
            key = (minor.ground, minor._masks)
            if key in seen:
                continue
            seen.add(key)
            if matroid_signature(minor) == sig and find_isomorphism(minor, N) is not None:
                return True
    return False
