import pytest

from raycensus.graphs import Graph
from raycensus.cliques import (maximal_cliques_masks, max_clique_size,
                               maximal_independent_sets, IndependentSetFamily,
                               find_pair_structure, verify_pair_structure,
                               PairStructureWitness)
from raycensus.generate import enumerate_order

from conftest import (brute_maximal_cliques, brute_maximal_independent_sets,
                      brute_pair_structure_exists, random_graph, petersen)


def all_graphs(n):
    out = []
    enumerate_order(n, out.append, fast=False)
    return out


def test_maximal_cliques_vs_brute_force():
    for n in range(1, 7):
        for g in all_graphs(n):
            got = sorted(maximal_cliques_masks(g.n, g.adj))
            assert got == brute_maximal_cliques(g)


def test_max_clique_size_known():
    assert max_clique_size(Graph.complete(6)) == 6
    assert max_clique_size(Graph.cycle(5)) == 2
    assert max_clique_size(Graph.cycle(3)) == 3
    assert max_clique_size(Graph.empty(4)) == 1
    assert max_clique_size(petersen()) == 2


def test_independent_sets_vs_brute_force():
    for n in range(1, 7):
        for g in all_graphs(n):
            fam = maximal_independent_sets(g)
            assert sorted(fam.masks) == brute_maximal_independent_sets(g)


def test_family_invariants():
    for seed in range(20):
        g = random_graph(7, seed)
        fam = maximal_independent_sets(g)
        assert isinstance(fam, IndependentSetFamily)
        assert list(fam.masks) == sorted(fam.masks)
        assert len(fam) == len(fam.masks)
        covered = 0
        for mask in fam.masks:
            covered |= mask
            # independence
            for v in range(g.n):
                if mask >> v & 1:
                    assert not g.adj[v] & mask
        assert covered == (1 << g.n) - 1  # every vertex in some maximal set


def test_independent_sets_rejects_empty():
    with pytest.raises(ValueError):
        maximal_independent_sets(Graph.empty(0))


def test_pair_structure_existence_vs_brute_force():
    """find_pair_structure finds a witness exactly when a good subset exists."""
    for n in range(1, 7):
        for g in all_graphs(n):
            for t in range(1, n + 1):
                w = find_pair_structure(g, t)
                if brute_pair_structure_exists(g, t):
                    assert w is not None, (g, t)
                    assert verify_pair_structure(g, w)
                    assert w.t == t
                else:
                    assert w is None, (g, t)


def test_pair_structure_known_cases():
    # C5 at t=3: one non-adjacent pair joined to a third vertex
    w = find_pair_structure(Graph.cycle(5), 3)
    assert w is not None and w.t == 3
    assert len(w.pairs) == 1 and len(w.singletons) == 1
    # complete graph: every subset works; pairs may be host-adjacent
    w5 = find_pair_structure(Graph.complete(5), 5)
    assert w5 is not None and w5.t == 5
    assert len(w5.pairs) == 2 and len(w5.singletons) == 1
    assert verify_pair_structure(Graph.complete(5), w5)
    # two vertices of the empty graph fit in a single pair (no cross edges)
    w2 = find_pair_structure(Graph.empty(3), 2)
    assert w2 is not None and len(w2.pairs) == 1
    # but three cannot: some cross edge is always missing
    assert find_pair_structure(Graph.empty(3), 3) is None


def test_pair_structure_parity():
    # the singleton count is exactly t mod 2
    g = Graph.complete(4)
    for t in (1, 2, 3, 4):
        w = find_pair_structure(g, t)
        assert w is not None and w.t == t
        assert len(w.singletons) == t % 2


def test_pair_structure_rejects_bad_t():
    with pytest.raises(ValueError):
        find_pair_structure(Graph.cycle(5), 0)
    assert find_pair_structure(Graph.cycle(5), 6) is None


def test_verify_pair_structure_rejects_corruption():
    g = Graph.cycle(6)
    w = find_pair_structure(g, 3)
    assert w is not None and verify_pair_structure(g, w)
    # cross edges 0-3 and 1-3 are missing in C6
    bad = PairStructureWitness([(0, 1)], [3])
    assert not verify_pair_structure(g, bad)
    # overlapping parts
    bad2 = PairStructureWitness([(0, 3)], [0])
    assert not verify_pair_structure(g, bad2)
    # missing cross edge between singletons: 0 and 2 non-adjacent in C6
    bad3 = PairStructureWitness([], [0, 2])
    assert not verify_pair_structure(g, bad3)
    # out-of-range vertex
    bad4 = PairStructureWitness([], [0, 7])
    assert not verify_pair_structure(g, bad4)
