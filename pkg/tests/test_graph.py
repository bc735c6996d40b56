from itertools import combinations, permutations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropitor import fixtures as fx
from tropitor.graph import (INF, GraphError, WeightedGraph, are_2_isomorphic, automorphism_edge_action,
                            bonds, c1_sets, canonical_form, connectivity_stats, contract_edge,
                            contract_edges, cycles, cycles_and_bonds, genus, is_3_edge_connected,
                            is_planar, is_stable, isomorphism, one_edge_specializations, separating_edges,
                            simplification, three_edge_connectivization, vertex_automorphisms)
from tropitor.planarity import kuratowski_minor


def names(G, sets):
    return {frozenset(G.edge_names[i] for i in s) for s in sets}


@st.composite
def multigraphs(draw, max_vertices=6, max_edges=9):
    n = draw(st.integers(1, max_vertices))
    weights = tuple(draw(st.lists(st.integers(0, 2), min_size=n, max_size=n)))
    # random spanning tree keeps the graph connected
    edges = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          max_size=max(0, max_edges - len(edges))))
    return WeightedGraph(weights, tuple(edges + extra))


def to_nx(G):
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n_vertices))
    H.add_edges_from(G.edges)
    return H


# -- construction and genus ----------------------------------------------------

def test_genus_examples():
    assert genus(fx.theta()) == 2
    assert genus(fx.peterson()) == 6
    assert genus(fx.single_vertex(2)) == 2


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        WeightedGraph((0, 0), ())


def test_stability_examples():
    assert is_stable(fx.theta())
    assert not is_stable(WeightedGraph((0,), ((0, 0),)))
    assert is_stable(fx.weighted_loop())


def test_contraction_rules():
    assert contract_edge(WeightedGraph((0,), ((0, 0),)), 0).weights == (1,)
    H = contract_edge(fx.two_weighted_vertices(), 0)
    assert H.weights == (2,) and H.n_edges == 0


def test_one_edge_specializations():
    assert {canonical_form(H) for H in one_edge_specializations(fx.theta())} == {canonical_form(fx.two_loops())}
    assert {canonical_form(H) for H in one_edge_specializations(fx.dumbbell())} == \
        {canonical_form(fx.two_loops()), canonical_form(fx.loop_and_weight())}
    assert one_edge_specializations(fx.single_vertex(2)) == []


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_contraction_preserves_genus(G):
    for e in range(G.n_edges):
        assert genus(contract_edge(G, e)) == genus(G)


# -- isomorphism and automorphisms ---------------------------------------------

def test_automorphism_groups():
    assert len(automorphism_edge_action(fx.theta())) == 6
    assert len(automorphism_edge_action(fx.dumbbell())) == 2
    assert len(vertex_automorphisms(fx.peterson())) == 120


def test_trivial_symmetry_matches_brute_force():
    # K4 with one edge subdivided twice and decorated by distinct weights
    G = WeightedGraph((0, 3, 0, 0, 1, 2), ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (4, 5), (5, 3)))
    brute = [p for p in permutations(range(G.n_vertices))
             if all(G.weights[p[v]] == G.weights[v] for v in range(G.n_vertices))
             and sorted(tuple(sorted((p[a], p[b]))) for a, b in G.edges)
             == sorted(tuple(sorted(e)) for e in G.edges)]
    assert len(brute) == 1
    assert len(vertex_automorphisms(G)) == 1
    assert len(automorphism_edge_action(G)) == 1


@settings(max_examples=60, deadline=None)
@given(multigraphs(), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(G, rnd):
    perm = list(range(G.n_vertices))
    rnd.shuffle(perm)
    edges = list(G.edges)
    rnd.shuffle(edges)
    H = WeightedGraph(tuple(G.weights[perm.index(v)] for v in range(G.n_vertices)),
                      tuple((perm[a], perm[b]) for a, b in edges))
    assert canonical_form(H) == canonical_form(G)
    vmap, emap = isomorphism(G, H)
    assert all(H.weights[vmap[v]] == G.weights[v] for v in range(G.n_vertices))
    for i, (a, b) in enumerate(G.edges):
        assert {vmap[a], vmap[b]} == set(H.edges[emap[i]])


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=7))
def test_automorphism_count_matches_networkx(G):
    H = nx.MultiGraph()
    for v, w in enumerate(G.weights):
        H.add_node(v, w=w)
    H.add_edges_from(G.edges)
    matcher = nx.isomorphism.MultiGraphMatcher(H, H, node_match=lambda a, b: a["w"] == b["w"],
                                               edge_match=lambda a, b: len(a) == len(b))
    # networkx counts vertex maps, which is what vertex_automorphisms returns
    assert len(set(tuple(sorted(m.items())) for m in matcher.isomorphisms_iter())) == len(vertex_automorphisms(G))


# -- cycles, bonds, C1-sets ------------------------------------------------------

def test_dual_pair_cycles_and_bonds():
    g1, g2 = fx.gamma1(), fx.gamma2()
    assert names(g1, cycles(g1)) == {frozenset({"e1", "e2", "e3"}), frozenset({"e4", "e5"})}
    assert names(g2, bonds(g2)) == {frozenset({"f1", "f2", "f3"}), frozenset({"f4", "f5"})}


def test_tree_has_no_cycles():
    T = WeightedGraph((1, 1, 1), ((0, 1), (1, 2)))
    cyc, bnd = cycles_and_bonds(T)
    assert cyc == set() and bnd == {frozenset({0}), frozenset({1})}


def test_petersen_cycle_and_bond_counts():
    P = fx.peterson()
    assert len(cycles(P)) == 57
    assert len(bonds(P)) == 191


@settings(max_examples=40, deadline=None)
@given(multigraphs(max_vertices=5, max_edges=7))
def test_cycles_match_networkx_simple_cycles(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n_vertices))
    simple = all(a != b for a, b in G.edges) and len({tuple(sorted(e)) for e in G.edges}) == G.n_edges
    if not simple:
        return
    H.add_edges_from(G.edges)
    want = {frozenset(frozenset(p) for p in zip(c, c[1:] + c[:1])) for c in nx.simple_cycles(H)}
    got = {frozenset(frozenset(G.edges[i]) for i in c) for c in cycles(G)}
    assert got == want


def test_c1_sets_examples():
    g1 = fx.gamma1()
    assert names(g1, c1_sets(g1)) == {frozenset({"e1", "e2", "e3"}), frozenset({"e4", "e5"})}
    assert c1_sets(fx.k(4)) == [frozenset({i}) for i in range(6)]
    assert is_3_edge_connected(fx.k(4))
    db = fx.dumbbell()
    assert sorted(c1_sets(db), key=min) == [frozenset({0}), frozenset({1})]
    assert separating_edges(db) == [2]
    assert not is_3_edge_connected(db)


# -- connectivity ------------------------------------------------------------------

def test_connectivity_examples():
    assert connectivity_stats(fx.gamma1()) == (1, 2, 2)
    assert connectivity_stats(fx.peterson()) == (3, 3, 5)
    assert connectivity_stats(fx.single_vertex(0)) == (INF, INF, INF)


@settings(max_examples=40, deadline=None)
@given(multigraphs())
def test_edge_connectivity_matches_networkx(G):
    if G.n_vertices < 2:
        return
    k, lam, _ = connectivity_stats(G)
    H = nx.Graph()
    for a, b in G.edges:
        if a != b:
            H.add_edge(a, b, capacity=H[a][b]["capacity"] + 1 if H.has_edge(a, b) else 1)
    H.add_nodes_from(range(G.n_vertices))
    cut = min(nx.minimum_cut_value(H, 0, t) for t in range(1, G.n_vertices))
    assert lam == cut


# -- simplification, 3-edge-connectivization ----------------------------------------

def test_simplification_examples():
    assert simplification(fx.theta()).edges == ((0, 1),)
    assert canonical_form(simplification(fx.k(4))) == canonical_form(fx.k(4))
    assert simplification(fx.dumbbell()).edges == ((0, 1),)


def test_three_edge_connectivization_examples():
    assert canonical_form(three_edge_connectivization(fx.dumbbell())) == canonical_form(fx.two_loops())
    assert canonical_form(three_edge_connectivization(fx.theta())) == canonical_form(fx.theta())
    R = three_edge_connectivization(fx.gamma1())
    assert is_3_edge_connected(R)
    assert R.n_vertices == 1 and sorted(R.edge_names) == ["e1", "e4"]


@settings(max_examples=60, deadline=None)
@given(multigraphs())
def test_three_edge_connectivization_properties(G):
    R = three_edge_connectivization(G)
    assert is_3_edge_connected(R)
    assert genus(R) == genus(G)
    assert R.n_edges == len(c1_sets(G))


# -- planarity ------------------------------------------------------------------------

def test_planarity_examples():
    assert is_planar(fx.k(4))
    assert not is_planar(fx.k33())
    assert not is_planar(fx.peterson())
    assert kuratowski_minor(fx.k(5)) == "K5"
    assert kuratowski_minor(fx.k33()) == "K33"


@settings(max_examples=80, deadline=None)
@given(multigraphs(max_vertices=7, max_edges=14))
def test_planarity_matches_networkx(G):
    assert is_planar(G) == nx.check_planarity(nx.Graph(to_nx(G)))[0]


def test_all_small_simple_graphs_planarity_matches_networkx():
    for n in (5, 6):
        pairs = list(combinations(range(n), 2))
        for k in range(len(pairs) - 3, len(pairs) + 1):
            for es in combinations(pairs, k):
                H = nx.Graph(es)
                if H.number_of_nodes() != n or not nx.is_connected(H):
                    continue
                G = WeightedGraph((0,) * n, es)
                assert is_planar(G) == nx.check_planarity(H)[0]


# -- 2-isomorphism -----------------------------------------------------------------------

def test_two_isomorphism_examples():
    P = fx.prism()
    iso = are_2_isomorphic(P, P)
    assert iso == {n: n for n in P.edge_names}
    assert are_2_isomorphic(fx.gamma1(), fx.gamma2()) is None


def test_whitney_twist_is_two_isomorphic_but_not_isomorphic():
    g1, g2 = fx.whitney_pair()
    assert isomorphism(g1, g2) is None
    iso = are_2_isomorphic(g1, g2)
    assert iso is not None
    for c in cycles(g1):
        image = frozenset(g2.edge_index(iso[g1.edge_names[i]]) for i in c)
        assert image in cycles(g2)


def test_contract_edges_by_name():
    H = contract_edges(fx.prism(), ["e7", "e8", "e9"])
    assert H.n_vertices == 3 and genus(H) == 4
