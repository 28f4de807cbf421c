from typing import Iterable, Iterator

import networkx as nx

from ..exceptions import GraphFormatError, ParameterError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an unordered pair."""
    return (u, v) if u < v else (v, u)


class UGraph:
    """Undirected simple graph over nodes 0..n-1."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ParameterError('n', f'{n} < 0')
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._edges: set[Edge] = set()
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> bool:
        """Add {u, v}; returns False when the edge was already present."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ParameterError('edge', f'({u}, {v}) outside 0..{self.n - 1}')
        if u == v:
            raise ParameterError('edge', f'self-loop on {u}')
        key = edge_key(u, v)
        if key in self._edges:
            return False
        self._edges.add(key)
        self._adj[u].add(v)
        self._adj[v].add(u)
        return True

    def remove_edge(self, u: int, v: int) -> None:
        self._edges.discard(edge_key(u, v))
        self._adj[u].discard(v)
        self._adj[v].discard(u)

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edges

    def neighbors(self, u: int) -> set[int]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    @property
    def edges(self) -> list[Edge]:
        """Edges in sorted order."""
        return sorted(self._edges)

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    def nodes(self) -> range:
        return range(self.n)

    def copy(self) -> 'UGraph':
        return UGraph(self.n, self._edges)

    def to_networkx(self) -> nx.Graph:
        h = nx.Graph()
        h.add_nodes_from(range(self.n))
        h.add_edges_from(self._edges)
        return h

    @classmethod
    def from_networkx(cls, h: nx.Graph) -> 'UGraph':
        """Relabel the nodes of h to 0..n-1 in sorted order; grid tuples come out row-major."""
        index = {node: i for i, node in enumerate(sorted(h.nodes()))}
        return cls(len(index), ((index[u], index[v]) for u, v in h.edges()))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self._adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def __contains__(self, edge: tuple[int, int]) -> bool:
        return self.has_edge(*edge)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UGraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __repr__(self) -> str:
        return f'UGraph(n={self.n}, m={self.num_edges})'


def write_graph(g: UGraph) -> str:
    lines = [f'{g.n} {g.num_edges}']
    lines.extend(f'{u} {v}' for u, v in g.edges)
    return '\n'.join(lines) + '\n'


def _ints(line: str, lineno: int, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphFormatError(lineno, f'expected {count} integers, got {len(parts)}')
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise GraphFormatError(lineno, f'non-integer field in {line.strip()!r}') from None


def read_graph(text: str) -> UGraph:
    """Parse the "n m" header followed by m "u v" lines."""
    rows = [(i, line) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not rows:
        raise GraphFormatError(1, "missing 'n m' header")

    lineno, header = rows[0]
    n, m = _ints(header, lineno, 2)
    if n < 0 or m < 0:
        raise GraphFormatError(lineno, 'negative node or edge count')
    if len(rows) - 1 != m:
        raise GraphFormatError(lineno, f'header announces {m} edges, found {len(rows) - 1}')

    g = UGraph(n)
    for lineno, line in rows[1:]:
        u, v = _ints(line, lineno, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(lineno, f'node index out of range 0..{n - 1}')
        if u == v:
            raise GraphFormatError(lineno, f'self-loop on {u}')
        if not g.add_edge(u, v):
            raise GraphFormatError(lineno, f'duplicate edge {edge_key(u, v)}')
    return g
