import numpy as np
import pytest

from cut_selector.circuit import Circuit, Gate, circuit_from_graph
from cut_selector.graphs import UGraph, barbell
from cut_selector.routing import CouplingMap, heavy_hex


def line_map(n: int) -> CouplingMap:
    return CouplingMap(UGraph(n, [(i, i + 1) for i in range(n - 1)]), name=f'line{n}')


def random_circuit(n_qubits: int, n_gates: int, rng: np.random.Generator) -> Circuit:
    """Random circuit over the simulator's gate set with at least one cuttable gate."""
    gates = [Gate.h(q) for q in range(n_qubits)]
    for _ in range(n_gates):
        kind = rng.choice(['h', 'sx', 'rx', 'rz', 'cx', 'cz', 'rzz'])
        a, b = (int(q) for q in rng.choice(n_qubits, size=2, replace=False))
        theta = float(rng.uniform(-np.pi, np.pi))
        gates.append(
            {
                'h': lambda: Gate.h(a),
                'sx': lambda: Gate.sx(a),
                'rx': lambda: Gate.rx(a, theta),
                'rz': lambda: Gate.rz(a, theta),
                'cx': lambda: Gate.cx(a, b),
                'cz': lambda: Gate.cz(a, b),
                'rzz': lambda: Gate.rzz(a, b, theta),
            }[str(kind)]()
        )
    gates.append(Gate.cx(0, n_qubits - 1))
    return Circuit(n_qubits, gates, name='random')


@pytest.fixture(scope='session')
def heavy_hex_small() -> CouplingMap:
    # 23 qubits; enough for the small benchmark instances
    return heavy_hex(3)


@pytest.fixture(scope='session')
def heavy_hex_127() -> CouplingMap:
    return heavy_hex(7)


@pytest.fixture
def line5() -> CouplingMap:
    return line_map(5)


@pytest.fixture
def barbell_circuit() -> Circuit:
    return circuit_from_graph(barbell(3, 0), name='barbell3')


@pytest.fixture
def barbell_text() -> str:
    return 'qubits 6\n' + ''.join(f'cx {u} {v}\n' for u, v in barbell(3, 0).edges)
