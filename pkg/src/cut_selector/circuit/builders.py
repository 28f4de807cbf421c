import logging

from ..exceptions import ParameterError
from ..graphs.generators import j1j2_edges
from ..graphs.ugraph import UGraph
from ..models.base import TfimSpec
from .ir import Circuit, Gate
from .observable import Observable

logger = logging.getLogger(__name__)


def circuit_from_graph(g: UGraph, name: str | None = None) -> Circuit:
    """One CX per edge in sorted edge order, control on the smaller index."""
    if g.n == 0:
        raise ParameterError('g', 'graph has no nodes')
    return Circuit(g.n, [Gate.cx(u, v) for u, v in g.edges], name=name)


def tfim_edges(spec: TfimSpec) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(J1 edges, J2 edges) of the TFIM topology, each ascending."""
    n = spec.n
    if spec.topology == 'chain':
        return [(i, i + 1) for i in range(n - 1)], []
    if spec.topology == 'ring':
        return sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]), []
    if n < 5:
        raise ParameterError('n', f'j1j2_ring needs n >= 5, got {n}')
    return j1j2_edges(n)


def build_tfim(spec: TfimSpec) -> Circuit:
    """Fixed-angle Trotterised transverse-field Ising circuit.

    |+>^n preparation, then per step: RZZ(rzz_angle) on J1 edges, RZZ scaled
    by J2/J1 on J2 edges, RX(2 h dt_x) on every qubit.
    """
    j1_edges, j2_edges = tfim_edges(spec)
    rx_angle = 2.0 * spec.h * spec.dt_x
    j2_angle = spec.rzz_angle * spec.j2 / spec.j1 if j2_edges else 0.0

    gates = [Gate.h(q) for q in range(spec.n)]
    for _ in range(spec.trotter_steps):
        gates.extend(Gate.rzz(u, v, spec.rzz_angle) for u, v in j1_edges)
        gates.extend(Gate.rzz(u, v, j2_angle) for u, v in j2_edges)
        gates.extend(Gate.rx(q, rx_angle) for q in range(spec.n))

    name = f'tfim_{spec.topology}_n{spec.n}_T{spec.trotter_steps}'
    logger.debug('%s: %d gates', name, len(gates))
    return Circuit(spec.n, gates, name=name)


def tfim_hamiltonian(spec: TfimSpec) -> Observable:
    """H = J1 sum ZZ (J1 edges) + J2 sum ZZ (J2 edges) + h sum X."""
    j1_edges, j2_edges = tfim_edges(spec)
    terms = [(spec.j1, {u: 'Z', v: 'Z'}) for u, v in j1_edges]
    if spec.j2 != 0.0:
        terms.extend((spec.j2, {u: 'Z', v: 'Z'}) for u, v in j2_edges)
    terms.extend((spec.h, {q: 'X'}) for q in range(spec.n))
    return Observable.from_sparse(spec.n, terms)
