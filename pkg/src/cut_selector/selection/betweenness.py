from collections import deque

from ..exceptions import ParameterError
from ..graphs.ugraph import UGraph, edge_key

Edge = tuple[int, int]


def edge_betweenness(g: UGraph) -> dict[Edge, float]:
    """Raw edge betweenness by Brandes dependency accumulation.

    Each unordered pair {s, t} is counted once and split evenly over its
    shortest paths; pairs in different components contribute nothing.
    Sources are processed in ascending order, so the float sums are
    reproducible.
    """
    bc: dict[Edge, float] = {e: 0.0 for e in g.edges}
    nbrs = [sorted(g.neighbors(v)) for v in g.nodes()]

    for s in g.nodes():
        stack = []
        preds: list[list[int]] = [[] for _ in g.nodes()]
        sigma = [0] * g.n
        dist = [-1] * g.n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            for w in nbrs[v]:
                if dist[w] < 0:
                    queue.append(w)
                    dist[w] = dist[v] + 1
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
                    preds[w].append(v)

        delta = [0.0] * g.n
        while stack:
            w = stack.pop()
            for v in preds[w]:
                c = sigma[v] / sigma[w] * (1.0 + delta[w])
                bc[edge_key(v, w)] += c
                delta[v] += c

    # every pair was seen from both of its endpoints
    return {e: value / 2.0 for e, value in bc.items()}


def normalize_bc(raw: float, n: int) -> float:
    """Divide by the unordered pair count n(n-1)/2."""
    if n < 2:
        raise ParameterError('n', f'normalisation needs n >= 2, got {n}')
    return raw / (n * (n - 1) / 2)


def normalized_edge_betweenness(g: UGraph) -> dict[Edge, float]:
    return {e: normalize_bc(v, g.n) for e, v in edge_betweenness(g).items()}


def degree_penalty(g: UGraph, edge: Edge) -> float:
    """(deg(u) + deg(v)) / (2 d_max)."""
    u, v = edge
    if not g.has_edge(u, v):
        raise ParameterError('edge', f'{edge} is not an edge of the graph')
    return (g.degree(u) + g.degree(v)) / (2 * g.max_degree())
