import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from ewsat.clique import (Graph, Hypergraph, bool_matmul, cliques_of_size, find_clique_bruteforce,
                          find_clique_mm, find_hyperclique, is_clique, is_hyperclique)
from ewsat.corpus import random_graph, random_hypergraph
from ewsat.errors import UsageError

from oracles import has_clique


def test_examples():
    K4 = Graph.complete(4)
    assert find_clique_bruteforce(K4, 3) == (0, 1, 2)
    C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert find_clique_bruteforce(C4, 3) is None
    assert find_clique_mm(C4, 3) is None
    assert find_clique_bruteforce(Graph.from_edges(3, []), 1) == (0,)
    assert find_clique_bruteforce(Graph.from_edges(3, []), 0) == ()
    assert find_clique_mm(K4, 4) is not None


def test_graph_validation():
    with pytest.raises(UsageError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(UsageError):
        Graph.from_edges(2, [(0, 2)])
    G = Graph.from_edges(3, [(0, 1)]).with_edge(1, 2)
    assert G.edges() == [(0, 1), (1, 2)]


def test_bool_matmul_against_naive():
    rng = random.Random(0)
    for _ in range(30):
        n = rng.randint(1, 9)
        A = [rng.getrandbits(n) for _ in range(n)]
        B = [rng.getrandbits(n) for _ in range(n)]
        C = bool_matmul(A, B)
        for i in range(n):
            for j in range(n):
                want = any((A[i] >> t) & 1 and (B[t] >> j) & 1 for t in range(n))
                assert ((C[i] >> j) & 1) == want


def test_cliques_of_size_counts():
    rng = random.Random(2)
    for _ in range(20):
        G = random_graph(rng, rng.randint(1, 9), 0.5)
        for s in range(4):
            want = sum(is_clique(G, S) for S in combinations(range(G.n), s))
            assert len(cliques_of_size(G, s)) == want


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 6), st.integers(0, 2 ** 32 - 1))
def test_solvers_match_oracle(n, p, k, seed):
    G = random_graph(random.Random(seed), n, p)
    truth = has_clique(G.n, G.edges(), k)
    for solve in (find_clique_bruteforce, find_clique_mm):
        C = solve(G, k)
        assert (C is not None) == truth
        if C is not None:
            assert len(set(C)) == k and is_clique(G, C)


def test_mm_falls_back_over_cap(caplog):
    G = Graph.complete(12)
    assert find_clique_mm(G, 6, cap=3) is not None


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 3), st.integers(1, 8), st.floats(0, 1), st.integers(0, 5), st.integers(0, 2 ** 32 - 1))
def test_hyperclique_matches_oracle(d, n, p, k, seed):
    H = random_hypergraph(random.Random(seed), d, n, p)
    truth = any(all(e in H.edges for e in combinations(S, d)) for S in combinations(range(n), k))
    C = find_hyperclique(H, k)
    assert (C is not None) == truth
    if C is not None:
        assert is_hyperclique(H, C)


def test_hypergraph_from_graph():
    G = Graph.from_edges(3, [(0, 1), (1, 2)])
    H = Hypergraph.from_graph(G)
    assert H.d == 2 and H.edges == {(0, 1), (1, 2)}
