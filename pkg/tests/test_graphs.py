import random

import pytest

from conftest import rand_graph
from motifkit.errors import CapacityError, InputError
from motifkit.graphs import (
    BipartiteGraph,
    Graph,
    are_consistently_isomorphic,
    are_isomorphic,
    bip_canonical_form,
    bip_independent,
    bip_induced_subgraph,
    biclique,
    canonical_form,
    canonical_graph,
    clique,
    complement,
    cycle_graph,
    independent,
    induced_subgraph,
    path_graph,
    star_graph,
    treewidth_exact,
    twin_free_quotient,
)


def test_graph_validation():
    with pytest.raises(InputError):
        Graph(2, [(0, 0)])
    with pytest.raises(InputError):
        Graph(2, [(0, 2)])
    with pytest.raises(InputError):
        Graph(-1)
    G = Graph(3, [(0, 1), (1, 0)])  # symmetric duplicates collapse
    assert len(G.edges) == 1


def test_bipgraph_validation():
    with pytest.raises(InputError):
        BipartiteGraph(2, 2, [(0, 2)])
    B = BipartiteGraph(2, 2, [(0, 0)])
    assert B.underlying().has_edge(0, 2)
    # ordered sides are part of identity
    assert BipartiteGraph(1, 2) != BipartiteGraph(2, 1)


def test_induced_subgraph():
    assert induced_subgraph(clique(4), [0, 1, 3]) == clique(3)
    assert induced_subgraph(clique(4), []) == Graph(0)
    P = induced_subgraph(cycle_graph(5), [0, 1, 2])
    assert are_isomorphic(P, path_graph(3))
    with pytest.raises(InputError):
        induced_subgraph(clique(3), [0, 5])


def test_complement():
    assert complement(independent(4)) == clique(4)
    rng = random.Random(7)
    for _ in range(20):
        G = rand_graph(rng, 7)
        assert complement(complement(G)) == G
    assert are_isomorphic(complement(cycle_graph(5)), cycle_graph(5))


def test_twin_free_quotient():
    Q, part = twin_free_quotient(clique(4))
    assert Q == clique(4)
    assert all(len(b) == 1 for b in part.blocks)
    for n in (1, 3, 5):
        Q, part = twin_free_quotient(independent(n))
        assert Q == Graph(1)
        assert part.blocks == (tuple(range(n)),)
    Q, part = twin_free_quotient(cycle_graph(4))
    assert Q == clique(2)
    assert part.blocks == ((0, 2), (1, 3))


def test_quotient_idempotent():
    rng = random.Random(11)
    for _ in range(30):
        G = rand_graph(rng, 8)
        Q, _ = twin_free_quotient(G)
        Q2, _ = twin_free_quotient(Q)
        assert Q2 == Q


def test_quotient_edge_monotone_small():
    # vertex-deletion never increases the quotient's edge count
    rng = random.Random(13)
    for _ in range(40):
        H = rand_graph(rng, 7)
        qe = len(twin_free_quotient(H)[0].edges)
        for v in range(H.n):
            sub = induced_subgraph(H, [u for u in range(H.n) if u != v])
            assert len(twin_free_quotient(sub)[0].edges) <= qe


def test_canonical_form():
    assert canonical_form(path_graph(3)) == canonical_form(Graph(3, [(0, 1), (0, 2)]))
    assert canonical_form(clique(3)) != canonical_form(path_graph(3))
    rng = random.Random(3)
    for _ in range(30):
        G = rand_graph(rng, 7)
        perm = list(range(G.n))
        rng.shuffle(perm)
        G2 = Graph(G.n, [(perm[u], perm[v]) for u, v in G.edges])
        assert canonical_form(G) == canonical_form(G2)
    # distinct sizes / edge counts always differ
    assert canonical_form(clique(4)) != canonical_form(clique(5))
    with pytest.raises(CapacityError):
        canonical_form(independent(11))


def test_canonical_form_separates_nonisomorphic():
    # all 4-vertex graphs: 11 isomorphism classes
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    keys = {
        canonical_form(
            Graph(4, [pairs[i] for i in range(6) if mask >> i & 1])
        )
        for mask in range(64)
    }
    assert len(keys) == 11


def test_canonical_graph_roundtrip():
    rng = random.Random(5)
    for _ in range(20):
        G = rand_graph(rng, 7)
        rep = canonical_graph(canonical_form(G))
        assert are_isomorphic(rep, G)
        assert canonical_form(rep) == canonical_form(G)


def test_bip_canonical_form():
    star = BipartiteGraph(1, 2, [(0, 0), (0, 1)])
    swapped = BipartiteGraph(2, 1, [(0, 0), (1, 0)])
    assert bip_canonical_form(star) != bip_canonical_form(swapped)
    assert are_isomorphic(star.underlying(), swapped.underlying())
    rng = random.Random(17)
    for _ in range(20):
        n1, n2 = rng.randint(1, 4), rng.randint(1, 4)
        edges = [(i, j) for i in range(n1) for j in range(n2) if rng.random() < 0.5]
        B = BipartiteGraph(n1, n2, edges)
        p1, p2 = list(range(n1)), list(range(n2))
        rng.shuffle(p1)
        rng.shuffle(p2)
        B2 = BipartiteGraph(n1, n2, [(p1[u], p2[v]) for u, v in edges])
        assert are_consistently_isomorphic(B, B2)


def test_complement_canonical_coherence():
    rng = random.Random(19)
    for _ in range(20):
        G = rand_graph(rng, 7)
        perm = list(range(G.n))
        rng.shuffle(perm)
        G2 = Graph(G.n, [(perm[u], perm[v]) for u, v in G.edges])
        assert canonical_form(complement(G)) == canonical_form(complement(G2))


def test_generators():
    B = biclique(2)
    assert B.n == 4 and len(B.edges) == 4
    I = bip_independent(3)
    assert I.n == 6 and not I.edges
    assert biclique(1).underlying() == clique(2)
    assert star_graph(3).n == 4 and len(star_graph(3).edges) == 3


def test_bip_induced_subgraph():
    B = biclique(2)
    sub = bip_induced_subgraph(B, [0, 2, 3])
    assert (sub.n1, sub.n2) == (1, 2)
    assert sub.edges == frozenset({(0, 0), (0, 1)})


def test_treewidth():
    assert treewidth_exact(clique(4)) == 3
    assert treewidth_exact(Graph(0)) == -1
    assert treewidth_exact(path_graph(5)) == 1
    assert treewidth_exact(star_graph(4)) == 1
    assert treewidth_exact(cycle_graph(4)) == 2
    assert treewidth_exact(independent(3)) == 0
    for k in range(1, 6):
        assert treewidth_exact(biclique(k).underlying()) == k
    with pytest.raises(CapacityError):
        treewidth_exact(independent(13))
