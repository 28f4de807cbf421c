"""Quasi-probability decomposition of a single two-qubit gate.

Every supported gate is a ZZ rotation U = exp(i t Z x Z) up to local Z
rotations, Hadamards and a global phase. The channel of U splits into six
local operations (c = cos t, s = sin t):

    c^2  identity
    s^2  Z on both qubits
    +cs  measure qubit a; rotate b by F_{+(-1)^m}
    -cs  measure qubit a; rotate b by F_{-(-1)^m}
    +cs  measure qubit b; rotate a by F_{+(-1)^m}
    -cs  measure qubit b; rotate a by F_{-(-1)^m}

with F_+ = RZ(-pi/2) and F_- = RZ(pi/2). The outcome-dependent sign is a
classically controlled Z, written as H CONDX H.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..circuit.ir import Circuit, Gate, GateKind
from ..exceptions import ParameterError
from .simulator import SWAP, DensityMatrixSimulator, gate_matrix

logger = logging.getLogger(__name__)

SUPPORTED_KINDS = (GateKind.CX, GateKind.CZ, GateKind.RZZ)
CHANNEL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class QpdBranch:
    coefficient: float
    gates: tuple[Gate, ...]  # on the cut gate's operands; clbit is the measured bit

    @property
    def measures(self) -> bool:
        return any(g.kind is GateKind.MEASURE for g in self.gates)


def _zz_angle(gate: Gate) -> float:
    if gate.kind is GateKind.RZZ:
        return -gate.angle / 2
    return math.pi / 4


def _measure_and_rotate(measured: int, rotated: int, sign: int, clbit: int) -> tuple[Gate, ...]:
    return (
        Gate.measure(measured, clbit),
        Gate.rz(rotated, -sign * math.pi / 2),
        Gate.h(rotated),
        Gate.condx(rotated, clbit),
        Gate.h(rotated),
    )


def qpd_branches(gate: Gate, clbit: int = 0, verify: bool = True) -> list[QpdBranch]:
    """Six local branches whose signed sum reproduces the channel of ``gate``.

    Measuring branches record into ``clbit``. With ``verify`` the decomposition
    for the gate's kind and angle is checked against its channel (cached).
    """
    if gate.kind not in SUPPORTED_KINDS:
        raise ParameterError('kind', f'cannot decompose {gate.kind.value}; supported: cx, cz, rzz')
    if verify:
        error = _verified_error(gate.kind, gate.angle)
        if error > CHANNEL_TOLERANCE:
            raise ArithmeticError(f'decomposition of {gate.kind.value} misses its channel by {error:.3e}')
    return _decompose(gate, clbit)


def _decompose(gate: Gate, clbit: int) -> list[QpdBranch]:
    a, b = gate.qubits
    t = _zz_angle(gate)
    c, s = math.cos(t), math.sin(t)

    cores: list[tuple[float, tuple[Gate, ...]]] = [
        (c * c, ()),
        (s * s, (Gate.rz(a, math.pi), Gate.rz(b, math.pi))),
        (c * s, _measure_and_rotate(a, b, +1, clbit)),
        (-c * s, _measure_and_rotate(a, b, -1, clbit)),
        (c * s, _measure_and_rotate(b, a, +1, clbit)),
        (-c * s, _measure_and_rotate(b, a, -1, clbit)),
    ]

    if gate.kind is GateKind.RZZ:
        before, after = (), ()
    elif gate.kind is GateKind.CZ:
        before, after = (), (Gate.rz(a, math.pi / 2), Gate.rz(b, math.pi / 2))
    else:  # CX = H_t CZ H_t
        before, after = (Gate.h(b),), (Gate.rz(a, math.pi / 2), Gate.rz(b, math.pi / 2), Gate.h(b))

    return [QpdBranch(coeff, before + core + after) for coeff, core in cores]


def gamma(gate: Gate) -> float:
    """Sampling overhead sum |c_k|: 3 for CX/CZ, 1 + 2|sin theta| for RZZ(theta)."""
    return sum(abs(br.coefficient) for br in qpd_branches(gate, verify=False))


def branch_superoperator(gates: tuple[Gate, ...]) -> np.ndarray:
    """16x16 superoperator of a gate sequence on qubits 0, 1 acting on row-major vec(rho)."""
    clbits = 1 if any(g.kind.uses_clbit for g in gates) else 0
    circuit = Circuit(2, list(gates), clbits)
    sim = DensityMatrixSimulator()
    columns = []
    for i in range(4):
        for j in range(4):
            basis = np.zeros((4, 4), dtype=complex)
            basis[i, j] = 1.0
            columns.append(sim.run(circuit, rho0=basis).density_matrix().reshape(-1))
    return np.array(columns).T


def gate_superoperator(gate: Gate) -> np.ndarray:
    """Unitary channel of a two-qubit gate on qubits 0, 1, honouring operand order."""
    if sorted(gate.qubits) != [0, 1]:
        raise ParameterError('gate', f'expected operands (0, 1) or (1, 0), got {gate.qubits}')
    u = gate_matrix(gate)
    if gate.qubits == (1, 0):
        u = SWAP @ u @ SWAP
    return np.kron(u, u.conj())


def channel_error(gate: Gate, branches: list[QpdBranch]) -> float:
    """Frobenius distance between the signed branch sum and the channel of a gate on qubits 0, 1."""
    total = sum(br.coefficient * branch_superoperator(br.gates) for br in branches)
    return float(np.linalg.norm(total - gate_superoperator(gate)))


@lru_cache(maxsize=64)
def _verified_error(kind: GateKind, angle: float | None) -> float:
    local = Gate(kind, (0, 1), angle)
    error = channel_error(local, _decompose(local, 0))
    logger.debug('verified %s decomposition, channel error %.2e', kind.value, error)
    return error
