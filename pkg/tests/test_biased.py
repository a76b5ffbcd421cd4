import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from bicircular.biased import (DEPENDANT, INDEPENDANT, BiasedGraph, BraceletFunction, balanced_families,
                               biased_graph_of_framework, bracelet, bracelet_function_from_matroid, bracelet_graph,
                               bracelets, check_theta_property, cycle_matroid, frame_matroid, is_framework,
                               is_proper, proper_violation, quasigraphic_matroid, theta_triples)
from bicircular.bicircular import bicircular_matroid
from bicircular.errors import InvalidInput
from bicircular.matroid import CircuitMatroid, is_isomorphic
from bicircular.multigraph import MultiGraph, cycles, is_connected

THETA = MultiGraph({1: (0, 1), 2: (0, 1), 3: (0, 1)})
TWO_TRIANGLES = MultiGraph({1: (0, 1), 2: (1, 2), 3: (0, 2), 4: (3, 4), 5: (4, 5), 6: (3, 5)})
K4 = MultiGraph({1: (0, 1), 2: (0, 2), 3: (0, 3), 4: (1, 2), 5: (1, 3), 6: (2, 3)})


def _nx(G, X=None):
    g = nx.MultiGraph()
    for e in (G.labels if X is None else X):
        g.add_edge(*G.ends(e))
    return g


def _is_cycle_brute(G, X):
    if not X:
        return False
    g = _nx(G, X)
    return nx.is_connected(g) and all(d == 2 for _, d in g.degree())


def _is_path_brute(G, X):
    g = _nx(G, X)
    return (nx.is_connected(g) and g.number_of_edges() == g.number_of_nodes() - 1
            and all(d <= 2 for _, d in g.degree()))


def theta_property_brute(G, balanced):
    bal = {frozenset(c) for c in balanced}
    for a, b in itertools.combinations(bal, 2):
        inter = a & b
        if inter and _is_path_brute(G, inter) and _is_cycle_brute(G, a ^ b) and (a ^ b) not in bal:
            return False
    return True


def graphs(max_edges=6):
    return [G for G in oracles.small_family() if G.num_edges <= max_edges]


# -- theta property ---------------------------------------------------------------

def test_theta_property_trivial_cases():
    assert check_theta_property(K4, [])
    assert check_theta_property(K4, cycles(K4))
    res = check_theta_property(THETA, [{1, 2}, {2, 3}])
    assert not res and res.counterexample[2] == {1, 3}


def test_non_cycle_member_rejected():
    with pytest.raises(InvalidInput):
        check_theta_property(K4, [{1, 2}])
    with pytest.raises(InvalidInput):
        BiasedGraph(THETA, [{1, 2}, {2, 3}])


def test_theta_triples_match_brute_force():
    for G in graphs(6):
        cyc = [c for c in cycles(G) if len(c) > 1]
        brute = set()
        for a, b in itertools.combinations(cyc, 2):
            if a & b and _is_path_brute(G, a & b) and _is_cycle_brute(G, a ^ b):
                brute.add(frozenset({a, b, a ^ b}))
        found = {frozenset(G.unmask(m) for m in t) for t in theta_triples(G)}
        assert found == brute, G


def test_balanced_families_are_exactly_the_theta_closed_families():
    for G in graphs(5):
        cyc = cycles(G)
        if len(cyc) > 10:
            continue
        brute = set()
        for k in range(len(cyc) + 1):
            for fam in itertools.combinations(cyc, k):
                if theta_property_brute(G, fam):
                    brute.add(frozenset(fam))
        found = {frozenset(BG.balanced) for BG in balanced_families(G)}
        assert found == brute, G


# -- frame matroids ----------------------------------------------------------------

def test_all_cycles_balanced_gives_the_cycle_matroid():
    for G in graphs(6):
        M = frame_matroid(G, cycles(G))
        assert M == cycle_matroid(G)
        # forests are exactly the independent sets
        for k in range(G.num_edges + 1):
            for X in itertools.combinations(G.labels, k):
                assert M.is_independent(X) == nx.is_forest(_nx(G, X)) if X else True


def test_no_balanced_cycles_gives_the_bicircular_matroid():
    for G in graphs(7):
        assert frame_matroid(G, []) == bicircular_matroid(G)


def test_frame_matroid_with_one_balanced_triangle_is_the_k4_matroid():
    found = []
    for G in oracles.small_family():
        if G.num_vertices != 3 or G.num_edges != 6:
            continue
        for BG in balanced_families(G):
            tri = [c for c in BG.balanced if len(c) == 3]
            if len(BG.balanced) == 1 and tri and is_isomorphic(frame_matroid(BG), cycle_matroid(K4)):
                found.append(BG)
    assert found


def test_frame_matroids_are_matroids_and_nest_between_graphic_and_bicircular():
    for G in graphs(6):
        MG, BGm = cycle_matroid(G), bicircular_matroid(G)
        for BG in balanced_families(G):
            F = frame_matroid(BG)
            assert F.axiom_violation() is None
            for k in range(G.num_edges + 1):
                for X in itertools.combinations(G.labels, k):
                    if MG.is_independent(X):
                        assert F.is_independent(X)
                    if F.is_independent(X):
                        assert BGm.is_independent(X)


# -- minors ------------------------------------------------------------------------

def test_contracting_an_unbalanced_loop_balances_the_other_loops_there():
    G = MultiGraph({"e": (0, 0), "f": (0, 0), "g": (0, 1)})
    H = BiasedGraph(G).contract("e")
    assert H.is_balanced({"f"})
    assert H.graph.is_loop("g") and H.graph.ends("g") == (1, 1)
    assert not H.is_balanced({"g"})


def test_deleting_a_balanced_loop():
    BG = BiasedGraph(MultiGraph({"e": (0, 0), "f": (0, 1)}), [{"e"}])
    H = BG.delete("e")
    assert H.balanced == [] and H.graph.labels == ("f",)


def test_contracting_a_balanced_loop_deletes_it():
    BG = BiasedGraph(MultiGraph({"e": (0, 0), "f": (0, 1)}), [{"e"}])
    assert BG.contract("e") == BG.delete("e")


def test_unknown_minor_operation():
    with pytest.raises(InvalidInput):
        BiasedGraph(THETA).delete(9)


def test_frame_minors_commute_for_every_edge():
    for G in graphs(6):
        for BG in balanced_families(G):
            F = frame_matroid(BG)
            for e in G.labels:
                assert frame_matroid(BG.delete(e)) == F.delete([e])
                assert frame_matroid(BG.contract(e)) == F.contract([e]), (BG, e)


def test_minors_keep_the_theta_property():
    for G in graphs(6):
        for BG in balanced_families(G):
            for e in G.labels:
                for H in (BG.delete(e), BG.contract(e)):
                    assert check_theta_property(H.graph, H.balanced)


# -- bracelets ---------------------------------------------------------------------

def test_two_disjoint_triangles_form_one_isolated_bracelet():
    BG = BiasedGraph(TWO_TRIANGLES)
    br = bracelets(BG)
    assert br == [bracelet({1, 2, 3}, {4, 5, 6})]
    assert bracelet_graph(BG) == {br[0]: set()}


def test_no_disjoint_unbalanced_cycles_means_no_bracelets():
    assert bracelets(BiasedGraph(K4)) == []
    assert bracelets(BiasedGraph(TWO_TRIANGLES, [{1, 2, 3}])) == []


def _cyclomatic_brute(G, X):
    g = _nx(G, X)
    return g.number_of_edges() - g.number_of_nodes() + nx.number_connected_components(g)


def test_three_joined_triangles():
    G = MultiGraph({1: (0, 1), 2: (1, 2), 3: (0, 2), 4: (3, 4), 5: (4, 5), 6: (3, 5),
                    7: (6, 7), 8: (7, 8), 9: (6, 8), 10: (0, 3), 11: (4, 7), 12: (8, 2)})
    BG = BiasedGraph(G)
    br = bracelets(BG)
    assert len(br) == 3
    adj = bracelet_graph(BG)
    for a, b in itertools.combinations(br, 2):
        union = frozenset().union(*a, *b)
        assert (b in adj[a]) == (_cyclomatic_brute(G, union) == 3)
    assert all(len(adj[b]) == 2 for b in br)


def test_bracelet_function_rejects_bad_values():
    with pytest.raises(InvalidInput):
        BraceletFunction({(frozenset({1}), frozenset({2})): "maybe"})


def test_improper_function_is_reported():
    G = MultiGraph({1: (0, 1), 2: (1, 2), 3: (0, 2), 4: (3, 4), 5: (4, 5), 6: (3, 5),
                    7: (6, 7), 8: (7, 8), 9: (6, 8), 10: (0, 3), 11: (4, 7), 12: (8, 2)})
    BG = BiasedGraph(G)
    br = bracelets(BG)
    chi = BraceletFunction({b: DEPENDANT if i == 0 else INDEPENDANT for i, b in enumerate(br)})
    assert not is_proper(BG, chi)
    assert proper_violation(BG, chi) is not None
    assert not quasigraphic_matroid(BG, chi).accepted
    assert quasigraphic_matroid(BG, chi).rejection is not None


def test_partial_function_rejected():
    with pytest.raises(InvalidInput):
        quasigraphic_matroid(BiasedGraph(TWO_TRIANGLES), BraceletFunction({}))


# -- quasi-graphic matroids ------------------------------------------------------

def test_constant_independant_is_the_bicircular_matroid():
    for G in graphs(6):
        res = quasigraphic_matroid(BiasedGraph(G))
        assert res.accepted and res.matroid == bicircular_matroid(G)


def test_dependant_bracelet_of_two_triangles():
    BG = BiasedGraph(TWO_TRIANGLES)
    res = quasigraphic_matroid(BG, BraceletFunction.constant(BG, DEPENDANT))
    assert res.accepted
    M = res.matroid
    assert M.circuits == {frozenset(range(1, 7))}
    # frozen from brute-force rank over the single circuit
    assert M.full_rank == oracles.brute_rank(M.circuits, M.ground, M.ground) == 5


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_accepted_bracelet_functions_are_proper(seed):
    rng = random.Random(seed)
    while True:
        G = rng.choice(oracles.small_family())
        fams = balanced_families(G)
        BG = rng.choice(fams)
        if bracelets(BG):
            break
    chi = BraceletFunction({b: rng.choice((DEPENDANT, INDEPENDANT)) for b in bracelets(BG)})
    if quasigraphic_matroid(BG, chi).accepted:
        assert is_proper(BG, chi)


def _six_vertex_instances(rng, count):
    out = []
    while len(out) < count:
        m = rng.randint(6, 9)
        G = MultiGraph({k + 1: (rng.randrange(6), rng.randrange(6)) for k in range(m)}, range(6))
        # the propriety theorem assumes a connected graph
        if not is_connected(G):
            continue
        fams = balanced_families(G)
        BG = rng.choice(fams)
        if bracelets(BG):
            out.append(BG)
    return out


def test_acceptance_matches_properness_on_six_vertex_samples():
    rng = random.Random(4)
    for BG in _six_vertex_instances(rng, 40):
        br = bracelets(BG)
        xs = range(1 << len(br)) if len(br) <= 4 else rng.sample(range(1 << len(br)), 16)
        for x in xs:
            chi = BraceletFunction({b: DEPENDANT if (x >> j) & 1 else INDEPENDANT for j, b in enumerate(br)})
            assert quasigraphic_matroid(BG, chi).accepted == is_proper(BG, chi)


def test_reconstructed_function_regenerates_the_matroid():
    rng = random.Random(8)
    for BG in _six_vertex_instances(rng, 30):
        br = bracelets(BG)
        chi = BraceletFunction.with_dependant(BG, [tuple(b) for b in br[:1]])
        res = quasigraphic_matroid(BG, chi)
        if not res.accepted:
            continue
        BG2, chi2 = bracelet_function_from_matroid(res.matroid, BG.graph)
        assert BG2 == BG
        assert is_proper(BG2, chi2)
        assert quasigraphic_matroid(BG2, chi2).matroid == res.matroid


def test_quasigraphic_minors_by_deletion_commute():
    rng = random.Random(2)
    for BG in _six_vertex_instances(rng, 20):
        chi = BraceletFunction.constant(BG, DEPENDANT)
        res = quasigraphic_matroid(BG, chi)
        if not res.accepted:
            continue
        M = res.matroid
        for e in BG.graph.labels:
            H = BG.delete(e)
            kept = {b: v for b, v in chi.assignment.items() if b in set(bracelets(H))}
            assert quasigraphic_matroid(H, BraceletFunction(kept)).matroid == M.delete([e])


# -- frameworks --------------------------------------------------------------------

def test_graphic_and_bicircular_matroids_have_their_graph_as_framework():
    for G in graphs(7):
        assert is_framework(cycle_matroid(G), G)
        assert is_framework(bicircular_matroid(G), G)


def test_clause_three_fails_when_a_circuit_is_split():
    G = MultiGraph({1: (0, 1), 2: (0, 1), 3: (0, 1)})
    H = MultiGraph({1: (0, 1), 2: (2, 3), 3: (4, 5)})
    rep = is_framework(bicircular_matroid(G), H)
    assert not rep.circuit_components
    assert rep.witnesses["iii"] == {1, 2, 3}
    assert not rep


def test_framework_ground_mismatch():
    with pytest.raises(InvalidInput):
        is_framework(CircuitMatroid.free([1, 2]), THETA)


def test_frame_matroid_recovers_its_biased_graph():
    for G in graphs(5):
        for BG in balanced_families(G):
            assert biased_graph_of_framework(frame_matroid(BG), G) == BG
