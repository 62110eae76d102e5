import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest

from localcolor.extraction import extract_dense_subgraph
from localcolor.graph import Graph, average_degree


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


ALPHA = Fraction(1, 4)
EPS = Fraction(1, 100)


class TestExtraction:
    def test_complete_graph_keeps_everything(self):
        res = extract_dense_subgraph(complete(8), ALPHA, EPS)
        assert res.kept == tuple(range(8))
        assert not res.removed_high and not res.removed_peel

    def test_regular_graph_keeps_everything(self):
        G = nx.random_regular_graph(4, 12, seed=1)
        g = Graph.from_edges(12, G.edges())
        res = extract_dense_subgraph(g, ALPHA, EPS)
        assert res.kept == tuple(range(12))

    def test_pendant_violates_precondition(self):
        # two K5's plus a pendant: delta = 1 but ad is far above 2
        edges = list(itertools.combinations(range(5), 2))
        edges += [(5 + u, 5 + v) for u, v in itertools.combinations(range(5), 2)]
        edges.append((0, 10))
        g = Graph.from_edges(11, edges)
        assert average_degree(g) > (1 + EPS) * g.min_degree()
        with pytest.raises(ValueError, match="average degree"):
            extract_dense_subgraph(g, ALPHA, EPS)

    def test_partition(self):
        G = nx.random_regular_graph(6, 20, seed=3)
        g = Graph.from_edges(20, G.edges())
        res = extract_dense_subgraph(g, ALPHA, EPS)
        pieces = set(res.kept) | set(res.removed_high) | set(res.removed_peel)
        assert pieces == set(range(20))
        assert len(res.kept) + len(res.removed_high) + len(res.removed_peel) == 20

    def test_degree_bounds_exact(self):
        rng = random.Random(5)
        for _ in range(25):
            d = rng.choice([4, 6, 8])
            n = rng.choice([12, 16, 20])
            G = nx.random_regular_graph(d, n, seed=rng.randrange(10**6))
            g = Graph.from_edges(n, G.edges())
            res = extract_dense_subgraph(g, ALPHA, EPS)
            assert res.kept
            kept = set(res.kept)
            delta = g.min_degree()
            for v in res.kept:
                dk = sum(1 for u in g.adj[v] if u in kept)
                assert dk >= Fraction(1 - ALPHA, 2) * delta
                assert len(g.adj[v]) <= (1 + (1 + ALPHA) / (ALPHA - EPS) * EPS) * delta

    def test_idempotent(self):
        G = nx.random_regular_graph(6, 14, seed=9)
        g = Graph.from_edges(14, G.edges())
        res = extract_dense_subgraph(g, ALPHA, EPS)
        sub = g.subgraph(res.kept)
        res2 = extract_dense_subgraph(sub, ALPHA, EPS)
        assert res2.kept == tuple(range(sub.n))

    def test_domain(self):
        with pytest.raises(ValueError):
            extract_dense_subgraph(complete(4), Fraction(1, 100), Fraction(1, 4))
