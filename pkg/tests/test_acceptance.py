"""Acceptance suite: one test per criterion, each recording a verdict line.

Run with ``pytest tests/test_acceptance.py``; the verdict lines are printed
in the terminal summary. Running this file as a script prints them too.
"""

import itertools
import random
import time

import numpy as np
import pytest

import oracles
from acceptance_log import record
from bicircular.biased import (balanced_families, bracelet_function_from_bits, biased_minor, cycle_matroid,
                               frame_matroid, is_framework, proper_table, quasigraphic_acceptance_table,
                               quasigraphic_matroid)
from bicircular.bicircular import (LoopBiasedGraph, balloons_and_lines, bicircular_matroid, classify_graph_type,
                                   essential_2_separation_shape, find_rolls, find_rotations, find_unrolls, loop_sum,
                                   replace, replacements, representation_closure, roll, rotate)
from bicircular.catalog import default_catalog
from bicircular.decide import element_bound, rank2_excluded_minors, rank_bound, verify_excluded_minor
from bicircular.matroid import CircuitMatroid, is_isomorphic, minimal_disagreement_sets, twin_check, two_sum
from bicircular.multigraph import (MultiGraph, _acyclic_count, _vmask, contract_edges, contractible_edges,
                                   enumerate_multigraphs, is_2connected, popcount, simplify)
from bicircular.multigraph import is_isomorphic as graphs_isomorphic

pytestmark = pytest.mark.acceptance


def _finish(number, failures, detail, start):
    ok = failures == 0
    record(number, ok, detail, time.time() - start)
    return ok


# 1 ---------------------------------------------------------------------------
def test_criterion_01_axiom_soundness():
    start = time.time()
    fam = oracles.small_family()
    failures = 0
    for G in fam:
        M = bicircular_matroid(G)
        # library validator and an independent pairwise elimination check
        if M.axiom_violation(cap=G.num_edges) is not None:
            failures += 1
        elif oracles.brute_circuit_elimination(M.circuits) is not None:
            failures += 1
        elif frozenset() in M.circuits or any(a < b for a in M.circuits for b in M.circuits):
            failures += 1
    elapsed = time.time() - start
    ok = _finish(1, failures + (elapsed >= 60), f"{len(fam)} graphs, {failures} violations", start)
    assert ok and elapsed < 60


# 2 ---------------------------------------------------------------------------
def test_criterion_02_rank_formula():
    start = time.time()
    failures = checked = 0
    for G in oracles.small_family():
        M = bicircular_matroid(G)
        for X in range(1 << G.num_edges):
            checked += 1
            if M._rank_mask(X) != popcount(_vmask(G, X)) - _acyclic_count(G, X):
                failures += 1
    assert _finish(2, failures, f"{checked} subsets, {failures} mismatches", start)


# 3 ---------------------------------------------------------------------------
def test_criterion_03_doubled_triangle_is_u36():
    start = time.time()
    G = MultiGraph({1: (1, 2), 2: (1, 2), 3: (2, 3), 4: (2, 3), 5: (1, 3), 6: (1, 3)})
    ok = is_isomorphic(bicircular_matroid(G), CircuitMatroid.uniform(3, range(6)))
    assert _finish(3, 0 if ok else 1, "B(2C3) isomorphic to U3,6" if ok else "not isomorphic", start)


# 4 ---------------------------------------------------------------------------
def test_criterion_04_rank4_ambiguity():
    start = time.time()
    U46 = CircuitMatroid.uniform(4, range(6))
    hits = [G for G in enumerate_multigraphs(4, 6, min_edges=6, connected=False)
            if is_isomorphic(bicircular_matroid(G), U46)]
    distinct = all(not graphs_isomorphic(a, b) for a, b in itertools.combinations(hits, 2))
    elapsed = time.time() - start
    ok = len(hits) >= 2 and distinct and elapsed < 60
    assert _finish(4, 0 if ok else 1, f"{len(hits)} non-isomorphic graphs represent U4,6", start)


# 5 ---------------------------------------------------------------------------
def _random_graph_with_loop(rng, e, prefix):
    """Connected graph on 2..4 vertices with loop ``e`` at vertex 0 and at
    least one more cycle touching it, so ``e`` is neither a loop nor a coloop
    of the bicircular matroid."""
    while True:
        n = rng.randint(1, 4)
        edges = {e: (0, 0)}
        for v in range(1, n):
            edges[f"{prefix}{len(edges)}"] = (rng.randrange(v), v)
        for _ in range(rng.randint(1, 3)):
            a, b = rng.randrange(n), rng.randrange(n)
            edges[f"{prefix}{len(edges)}"] = (a, b)
        G = MultiGraph(edges)
        M = bicircular_matroid(G)
        if e not in M.loops and e not in M.coloops:
            return G


def test_criterion_05_loop_sum_is_two_sum():
    start = time.time()
    rng = random.Random(5)
    failures = 0
    pairs = 150
    for _ in range(pairs):
        G = _random_graph_with_loop(rng, "e", "a")
        G2 = _random_graph_with_loop(rng, "e", "b")
        H = loop_sum(G, G2, "e")
        if bicircular_matroid(H) != two_sum(bicircular_matroid(G), bicircular_matroid(G2), "e"):
            failures += 1
    assert _finish(5, failures, f"{pairs} random pairs, {failures} mismatches", start)


# 6 ---------------------------------------------------------------------------
def test_criterion_06_minor_commutation():
    start = time.time()
    failures = checked = 0
    for G in oracles.small_family():
        loops = G.loops()
        for k in range(len(loops) + 1):
            for S in itertools.combinations(loops, k):
                BG = LoopBiasedGraph(G, S).to_biased()
                F = frame_matroid(BG)
                for e in G.labels:
                    for op in ("delete", "contract"):
                        checked += 1
                        lhs = frame_matroid(biased_minor(BG, op, e))
                        rhs = F.delete({e}) if op == "delete" else F.contract({e})
                        failures += lhs != rhs
    assert _finish(6, failures, f"{checked} (graph, balanced loops, edge, op) cases, {failures} mismatches", start)


# 7 ---------------------------------------------------------------------------
def _vertically_3_connected_type3(count):
    out = []
    for n in (5, 6):
        for G in enumerate_multigraphs(n, n + 5, min_edges=n + 2):
            if classify_graph_type(G).type != 3:
                continue
            M = bicircular_matroid(G)
            if M.full_rank >= 5 and M.is_vertically_3_connected():
                out.append(G)
                if len(out) >= count:
                    return out
    return out


def test_criterion_07_move_invariance():
    start = time.time()
    failures = moves = 0
    for G in oracles.small_family():
        M = bicircular_matroid(G)
        results = [roll(G, r.line, r.apex, r.target) for r in find_rolls(G)]
        results += [G0 for *_, G0 in find_unrolls(G)]
        results += [rotate(G, w) for w in find_rotations(G)]
        for s in balloons_and_lines(G):
            results += [replace(G, s.edges, rep) for rep in replacements(G, s.edges)]
        moves += len(results)
        failures += sum(bicircular_matroid(H) != M for H in results)
    sample = _vertically_3_connected_type3(25)
    closure_sizes = [len(representation_closure(G)) for G in sample]
    failures += sum(s != 1 for s in closure_sizes) + (len(sample) < 20)
    detail = (f"{moves} moves, matroid changed {failures} times; "
              f"{len(sample)} type-3 instances with closure size 1: {closure_sizes.count(1)}")
    assert _finish(7, failures, detail, start)


# 8 ---------------------------------------------------------------------------
def test_criterion_08_series_classes_and_essential_separations():
    start = time.time()
    failures = checked = splits = 0
    for G in oracles.small_family():
        M = bicircular_matroid(G)
        if not M.is_connected() or len(M.circuits) <= 1:
            continue
        checked += 1
        series = {c for c in M.series_classes() if len(c) > 1}
        if series != {s.edges for s in balloons_and_lines(G)}:
            failures += 1
        essential = {s.side_a for s in M.essential_2_separations()}
        essential |= {s.side_b for s in M.essential_2_separations()}
        first, rest = G.labels[0], G.labels[1:]
        for bits in range(1 << len(rest)):
            A = frozenset([first, *(rest[i] for i in range(len(rest)) if (bits >> i) & 1)])
            if len(A) == G.num_edges:
                continue
            splits += 1
            failures += essential_2_separation_shape(G, A) != (A in essential)
    assert _finish(8, failures, f"{checked} connected non-circuit B(G), {splits} bipartitions, "
                                f"{failures} disagreements", start)


# 9 ---------------------------------------------------------------------------
def test_criterion_09_contractible_edges():
    start = time.time()
    failures = matchings = exceptions = 0
    graphs = oracles.two_connected_simple(7)
    for G in graphs:
        S = contractible_edges(G)
        if not is_2connected(MultiGraph({e: G.ends(e) for e in S}, G.vertices)):
            failures += 1
        if G.num_vertices < 6:
            continue
        found = [X for X in itertools.combinations(sorted(S), 3)
                 if len({v for e in X for v in G.ends(e)}) == 6]
        if not found:
            exceptions += 1
            failures += not oracles.is_k2n_or_k2n_prime(simplify(G))
        for X in found:
            matchings += 1
            for r in range(4):
                for Z in itertools.combinations(X, r):
                    failures += not is_2connected(contract_edges(G, Z))
    assert _finish(9, failures, f"{len(graphs)} graphs, {matchings} contractible 3-matchings, "
                                f"{exceptions} K2,n-type exceptions, {failures} failures", start)


# 10 --------------------------------------------------------------------------
def test_criterion_10_quasigraphic_suite():
    start = time.time()
    rng = random.Random(10)
    fam = oracles.small_family()
    instances = improper_accepted = proper_rejected = direct = direct_mismatch = 0
    for G in fam:
        for BG in balanced_families(G):
            instances += 1
            keys, acc = quasigraphic_acceptance_table(BG)
            _, prop = proper_table(BG)
            improper_accepted += bool(np.any(acc & ~prop))
            proper_rejected += bool(np.any(prop & ~acc))
            k = len(keys)
            xs = range(1 << k) if k <= 3 else rng.sample(range(1 << k), 4)
            for x in xs:
                direct += 1
                res = quasigraphic_matroid(BG, bracelet_function_from_bits(keys, x))
                direct_mismatch += res.accepted != bool(acc[x])
    framework_failures = 0
    for G in fam:
        framework_failures += not is_framework(cycle_matroid(G), G).passed
        framework_failures += not is_framework(bicircular_matroid(G), G).passed
    failures = improper_accepted + proper_rejected + direct_mismatch + framework_failures
    detail = (f"{instances} biased graphs: improper accepted {improper_accepted}, proper rejected "
              f"{proper_rejected}; {direct} direct checks, {direct_mismatch} mismatches; "
              f"framework failures {framework_failures}")
    assert _finish(10, failures, detail, start)


# 11 --------------------------------------------------------------------------
def test_criterion_11_excluded_minors():
    start = time.time()
    cat = default_catalog()
    failures = 0
    parts = []
    for name in ("M(2C3)", "M(K4)"):
        t0 = time.time()
        rep = verify_excluded_minor(cat.get(name).matroid)
        ok = rep.is_excluded_minor and rep.exhaustive and time.time() - t0 < 300
        failures += not ok
        parts.append(f"{name}: {rep.verdict}")
    assert _finish(11, failures, "; ".join(parts), start)


# 12 --------------------------------------------------------------------------
def test_criterion_12_rank2_classification():
    start = time.time()
    found = rank2_excluded_minors(8)
    m2c3 = default_catalog().get("M(2C3)").matroid
    ok = len(found) == 1 and is_isomorphic(found[0], m2c3) and time.time() - start < 300
    assert _finish(12, 0 if ok else 1, f"{len(found)} rank-2 excluded minor(s) on <= 8 elements, "
                                       f"isomorphic to M(2C3): {ok}", start)


# 13 --------------------------------------------------------------------------
def test_criterion_13_bounds():
    start = time.time()
    got = (element_bound(2), element_bound(3), element_bound(7), rank_bound())
    ok = got == (9, 16, 74, 7)
    assert _finish(13, 0 if ok else 1, f"element bounds 2,3,7 -> {got[:3]}, rank bound {got[3]}", start)


# 14 --------------------------------------------------------------------------
def twin_pairs(limit):
    """Twins from moving one end of one edge of a bicircular representation:
    X collects the elements whose contraction makes the two matroids agree."""
    out = []
    for n in (3, 4):
        for G in enumerate_multigraphs(n, n + 3, min_edges=n + 1):
            M = bicircular_matroid(G)
            for f in G.labels:
                u, v = G.ends(f)
                for keep, other in sorted({(u, v), (v, u)}):
                    for w in G.vertices:
                        if w == other:
                            continue
                        N = bicircular_matroid(G.with_ends(f, keep, w))
                        if N == M:
                            continue
                        X = frozenset(e for e in G.labels if e != f and M.contract({e}) == N.contract({e}))
                        if X:
                            out.append((M, N, X))
                            if len(out) >= limit:
                                return out
    return out


def test_criterion_14_twins_and_disagreement_sets():
    start = time.time()
    pairs = twin_pairs(400)
    failures = sets = 0
    for M, N, X in pairs:
        failures += twin_check(M, N, X) is None
        for Y in minimal_disagreement_sets(M, N):
            sets += 1
            circ, ind = (M, N) if M.is_circuit(Y) else (N, M)
            failures += not (circ.is_circuit(Y) and ind.is_independent(Y))
            for e in X:
                failures += e in circ.closure(Y)
                failures += e not in ind.closure(Y)
                failures += not ind.contract({e}).is_circuit(Y)
    ok_count = len(pairs) >= 100
    assert _finish(14, failures + (not ok_count),
                   f"{len(pairs)} twin pairs, {sets} minimal disagreement sets, {failures} failures", start)


if __name__ == "__main__":
    import acceptance_log

    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(acceptance_log.lines()))
