from dataclasses import dataclass, field

from ..graphs.ugraph import UGraph
from .ir import Circuit

Edge = tuple[int, int]


@dataclass
class InteractionGraph:
    """Logical-qubit graph of a circuit with per-pair gate occurrences."""

    base: UGraph
    occurrences: dict[Edge, list[int]] = field(default_factory=dict)

    def weight(self, edge: Edge) -> int:
        return len(self.occurrences.get(edge, ()))

    @property
    def weights(self) -> dict[Edge, int]:
        return {e: len(pos) for e, pos in self.occurrences.items()}

    @property
    def edges(self) -> list[Edge]:
        return self.base.edges

    def first_occurrence(self, edge: Edge) -> int:
        return self.occurrences[edge][0]

    def total_weight(self) -> int:
        return sum(len(pos) for pos in self.occurrences.values())


def extract(c: Circuit) -> InteractionGraph:
    """Undirected interaction graph; every two-qubit gate counts, orientation ignored."""
    base = UGraph(c.n_qubits)
    occurrences: dict[Edge, list[int]] = {}
    for pos, gate in enumerate(c.gates):
        if not gate.is_two_qubit:
            continue
        pair = gate.pair
        base.add_edge(*pair)
        occurrences.setdefault(pair, []).append(pos)
    return InteractionGraph(base, dict(sorted(occurrences.items())))


def write_interaction(ig: InteractionGraph) -> str:
    """Graph text format with a third weight column."""
    lines = [f'{ig.base.n} {ig.base.num_edges}']
    lines.extend(f'{u} {v} {ig.weight((u, v))}' for u, v in ig.edges)
    return '\n'.join(lines) + '\n'
