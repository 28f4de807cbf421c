"""Device coupling maps and the heavy-hex lattice family."""

from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ..exceptions import ParameterError
from ..graphs.ugraph import UGraph, read_graph, write_graph


class CouplingMap:
    """Connected physical-qubit graph with its all-pairs hop distances."""

    def __init__(self, graph: UGraph, name: str | None = None):
        if graph.n == 0:
            raise ParameterError('coupling', 'coupling map has no qubits')
        if not graph.is_connected():
            raise ParameterError('coupling', 'coupling map must be connected')
        self.graph = graph
        self.name = name or f'coupling{graph.n}'
        self.dist = self._distances(graph)
        self._dist_rows: list[list[int]] = self.dist.astype(int).tolist()
        self._nbrs = [sorted(graph.neighbors(p)) for p in graph.nodes()]

    @staticmethod
    def _distances(graph: UGraph) -> np.ndarray:
        if graph.num_edges == 0:
            return np.zeros((graph.n, graph.n))
        rows, cols = zip(*graph.edges)
        adj = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(graph.n, graph.n))
        return shortest_path(adj, directed=False, unweighted=True)

    @property
    def n(self) -> int:
        return self.graph.n

    def neighbors(self, p: int) -> list[int]:
        return self._nbrs[p]

    def are_connected(self, a: int, b: int) -> bool:
        return self.graph.has_edge(a, b)

    def distance(self, a: int, b: int) -> int:
        return self._dist_rows[a][b]

    @property
    def diameter(self) -> int:
        return int(self.dist.max())

    def __repr__(self) -> str:
        return f'CouplingMap({self.name}, n={self.n}, m={self.graph.num_edges})'


def heavy_hex_lattice(rows: int, cells: int) -> UGraph:
    """Heavy-hex strip of `rows` qubit rows, 4*cells+3 columns wide.

    Consecutive rows are joined through bridge qubits every fourth column,
    starting at column 0 for even gaps and column 2 for odd gaps. The first
    row loses its last column and the last row loses the end column no
    bridge reaches. Node ids run row by row with each gap's bridges
    numbered between the two rows they join.
    """
    if rows < 2:
        raise ParameterError('rows', f'{rows} < 2')
    if cells < 1:
        raise ParameterError('cells', f'{cells} < 1')

    width = 4 * cells + 3
    last_gap_offset = 0 if (rows - 2) % 2 == 0 else 2
    row_columns: list[list[int]] = []
    for r in range(rows):
        cols = list(range(width))
        if r == 0:
            cols = cols[:-1]
        if r == rows - 1:
            cols = cols[1:] if last_gap_offset == 2 else cols[:-1]
        row_columns.append(cols)

    edges: list[tuple[int, int]] = []
    pending_bridges: dict[int, int] = {}  # column -> bridge id hanging below the previous row
    next_id = 0
    for r, cols in enumerate(row_columns):
        this_row = {}
        for c in cols:
            this_row[c] = next_id
            next_id += 1
        edges.extend((this_row[c], this_row[c + 1]) for c in cols if c + 1 in this_row)
        edges.extend((bridge, this_row[c]) for c, bridge in pending_bridges.items())

        pending_bridges = {}
        if r < rows - 1:
            offset = 0 if r % 2 == 0 else 2
            for c in range(offset, width, 4):
                pending_bridges[c] = next_id
                edges.append((this_row[c], next_id))
                next_id += 1

    return UGraph(next_id, edges)


def heavy_hex(d: int = 7) -> CouplingMap:
    """Heavy-hex map of odd distance d; d = 7 gives the 127-qubit device."""
    if d < 3 or d % 2 == 0:
        raise ParameterError('d', f'heavy-hex distance must be odd and >= 3, got {d}')
    graph = heavy_hex_lattice(d, (d - 1) // 2)
    return CouplingMap(graph, name=f'heavyhex{graph.n}')


def read_coupling(path: str | Path) -> CouplingMap:
    path = Path(path)
    with open(path, 'r', encoding='ascii') as f:
        return CouplingMap(read_graph(f.read()), name=path.stem)


def write_coupling(cm: CouplingMap, path: str | Path) -> None:
    with open(path, 'w', encoding='ascii', newline='\n') as f:
        f.write(write_graph(cm.graph))


def load_coupling(spec: str) -> CouplingMap:
    """'heavyhex127', 'heavyhex:<d>' or a graph file path."""
    if spec == 'heavyhex127':
        return heavy_hex(7)
    if spec.startswith('heavyhex:'):
        try:
            d = int(spec.split(':', 1)[1])
        except ValueError:
            raise ParameterError('coupling', f'bad heavy-hex distance in {spec!r}') from None
        return heavy_hex(d)
    return read_coupling(spec)
