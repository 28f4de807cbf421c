import math
from collections import deque

import networkx as nx
import numpy as np
import pytest

from cut_selector.exceptions import ParameterError
from cut_selector.graphs import UGraph, barbell, edge_key, erdos_renyi, j1j2_ring
from cut_selector.selection import degree_penalty, edge_betweenness, normalize_bc, normalized_edge_betweenness


def test_edge_betweenness_matches_networkx():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(2, 11))
        g = erdos_renyi(n, float(rng.uniform(0.1, 0.8)), seed=int(rng.integers(2**32)))
        expected = nx.edge_betweenness_centrality(g.to_networkx(), normalized=False)
        ours = edge_betweenness(g)
        for (u, v), value in ours.items():
            key = (u, v) if (u, v) in expected else (v, u)
            assert value == pytest.approx(expected[key], abs=1e-9)


def distances(g: UGraph) -> list[list[float]]:
    dist = [[math.inf] * g.n for _ in range(g.n)]
    for s in g.nodes():
        dist[s][s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if dist[s][w] == math.inf:
                    dist[s][w] = dist[s][u] + 1
                    queue.append(w)
    return dist


def naive_edge_betweenness(g: UGraph) -> dict[tuple[int, int], float]:
    """Enumerate every shortest path of every connected pair and split one unit across them."""
    dist = distances(g)
    bc = {e: 0.0 for e in g.edges}
    for s in g.nodes():
        for t in range(s + 1, g.n):
            if dist[s][t] == math.inf:
                continue
            paths = []

            def extend(path: list[int]) -> None:
                u = path[-1]
                if u == t:
                    paths.append(path)
                    return
                for w in g.neighbors(u):
                    if dist[w][t] == dist[u][t] - 1:
                        extend(path + [w])

            extend([s])
            for path in paths:
                for a, b in zip(path, path[1:]):
                    bc[edge_key(a, b)] += 1 / len(paths)
    return bc


def test_edge_betweenness_matches_path_enumeration():
    rng = np.random.default_rng(17)
    for _ in range(200):
        n = int(rng.integers(2, 10))
        g = erdos_renyi(n, float(rng.uniform(0.1, 0.8)), seed=int(rng.integers(2**32)))
        expected = naive_edge_betweenness(g)
        ours = edge_betweenness(g)
        assert ours.keys() == expected.keys()
        for edge, value in ours.items():
            assert value == pytest.approx(expected[edge], abs=1e-9)


def test_betweenness_sums_to_the_total_pairwise_distance():
    rng = np.random.default_rng(23)
    for _ in range(50):
        n = int(rng.integers(2, 12))
        g = erdos_renyi(n, float(rng.uniform(0.1, 0.8)), seed=int(rng.integers(2**32)))
        dist = distances(g)
        total = sum(dist[s][t] for s in range(n) for t in range(s + 1, n) if dist[s][t] < math.inf)
        assert sum(edge_betweenness(g).values()) == pytest.approx(total, abs=1e-9)


def test_tree_edges_carry_the_product_of_their_sides():
    rng = np.random.default_rng(29)
    for n in range(2, 12):
        tree = UGraph(n, [(int(rng.integers(i)), i) for i in range(1, n)])
        bc = edge_betweenness(tree)
        for u, v in tree.edges:
            side = distances(UGraph(n, [e for e in tree.edges if e != (u, v)]))[u]
            size = sum(1 for d in side if d < math.inf)
            assert bc[(u, v)] == pytest.approx(size * (n - size))


def test_bridge_of_a_barbell_carries_every_crossing_pair():
    bc = edge_betweenness(barbell(3, 0))
    assert bc[(2, 3)] == pytest.approx(9.0)
    assert max(bc, key=bc.get) == (2, 3)


def test_disconnected_pairs_contribute_nothing():
    g = UGraph(4, [(0, 1), (2, 3)])
    assert edge_betweenness(g) == {(0, 1): 1.0, (2, 3): 1.0}


def test_j1j2_ring_closing_edge_is_the_unique_maximum():
    bc = normalized_edge_betweenness(j1j2_ring(8))
    assert bc[(0, 7)] == pytest.approx(0.1875, abs=1e-4)
    others = [v for e, v in bc.items() if e != (0, 7)]
    assert max(others) < bc[(0, 7)] - 1e-6


def test_normalize_bc():
    assert normalize_bc(3.0, 4) == pytest.approx(0.5)
    with pytest.raises(ParameterError):
        normalize_bc(1.0, 1)


def test_degree_penalty():
    g = barbell(3, 0)
    assert degree_penalty(g, (2, 3)) == pytest.approx(1.0)
    assert degree_penalty(g, (0, 1)) == pytest.approx(4 / 6)
    with pytest.raises(ParameterError, match='not an edge'):
        degree_penalty(g, (0, 4))
