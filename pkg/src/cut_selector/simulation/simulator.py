"""Exact statevector and density-matrix simulation with classical branches.

States are numpy tensors with one axis per qubit, qubit 0 first (the most
significant bit of a flattened index). Mid-circuit measurements split the
state into branches keyed by the classical register; branch weights are
carried unnormalised, so the squared norm (statevector) or trace (density
matrix) of a branch is its probability.
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..circuit.ir import Circuit, Gate, GateKind
from ..config import NATIVE_COST, Config
from ..exceptions import SimulationLimitError
from ..models.base import NoiseModel

logger = logging.getLogger(__name__)

_SQ2 = 1 / np.sqrt(2)
H = np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
X = np.array([[0, 1], [1, 0]], dtype=complex)
SX = np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex) / 2
SDG = np.diag([1, -1j]).astype(complex)
CX = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
CZ = np.diag([1, 1, 1, -1]).astype(complex)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

# basis change so that a Z measurement reads the given Pauli
BASIS_ROTATION = {'X': H, 'Y': H @ SDG}


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * theta), np.exp(0.5j * theta)])


def rzz(theta: float) -> np.ndarray:
    a, b = np.exp(-0.5j * theta), np.exp(0.5j * theta)
    return np.diag([a, b, b, a])


def gate_matrix(gate: Gate) -> np.ndarray:
    kind = gate.kind
    if kind is GateKind.RX:
        return rx(gate.angle)
    if kind is GateKind.RZ:
        return rz(gate.angle)
    if kind is GateKind.RZZ:
        return rzz(gate.angle)
    fixed = {
        GateKind.H: H,
        GateKind.X: X,
        GateKind.SX: SX,
        GateKind.CX: CX,
        GateKind.CZ: CZ,
        GateKind.SWAP: SWAP,
    }
    return fixed[kind]


def apply_1q(state: np.ndarray, u: np.ndarray, axis: int) -> np.ndarray:
    state = np.tensordot(u, state, axes=([1], [axis]))
    return np.moveaxis(state, 0, axis)


def apply_2q(state: np.ndarray, u: np.ndarray, a: int, b: int) -> np.ndarray:
    state = np.tensordot(u.reshape(2, 2, 2, 2), state, axes=([2, 3], [a, b]))
    return np.moveaxis(state, [0, 1], [a, b])


def _project(state: np.ndarray, axes: tuple[int, ...], outcome: int) -> np.ndarray:
    out = state.copy()
    for axis in axes:
        index = [slice(None)] * out.ndim
        index[axis] = 1 - outcome
        out[tuple(index)] = 0
    return out


Bits = tuple[int, ...]


@dataclass
class StateBranches:
    """Classical-register keyed branches of a simulated circuit."""

    n_qubits: int
    density: bool
    branches: list[tuple[Bits, np.ndarray]]

    def total_probability(self) -> float:
        if self.density:
            return float(sum(np.real(np.trace(_as_matrix(r, self.n_qubits))) for _, r in self.branches))
        return float(sum(np.vdot(s, s).real for _, s in self.branches))

    def probabilities(self, basis: Optional[str] = None) -> np.ndarray:
        """Z-basis outcome distribution after rotating qubit i into basis[i] (X, Y or Z/I)."""
        n = self.n_qubits
        total = np.zeros(2**n)
        for _, state in self.branches:
            s = state
            if basis:
                for q, p in enumerate(basis):
                    u = BASIS_ROTATION.get(p)
                    if u is None:
                        continue
                    s = apply_1q(s, u, q)
                    if self.density:
                        s = apply_1q(s, u.conj(), n + q)
            if self.density:
                total += np.real(np.diagonal(_as_matrix(s, n)))
            else:
                total += np.abs(s.reshape(-1)) ** 2
        return total

    def density_matrix(self) -> np.ndarray:
        """Full density matrix with the classical register traced out."""
        dim = 2**self.n_qubits
        rho = np.zeros((dim, dim), dtype=complex)
        for _, s in self.branches:
            if self.density:
                rho += _as_matrix(s, self.n_qubits)
            else:
                v = s.reshape(-1)
                rho += np.outer(v, v.conj())
        return rho


def _as_matrix(rho: np.ndarray, n: int) -> np.ndarray:
    return rho.reshape(2**n, 2**n)


def _set_bit(bits: Bits, k: int, value: int) -> Bits:
    return bits[:k] + (value,) + bits[k + 1:]


class StatevectorSimulator:
    """Pure-state evolution; depolarising noise is not representable here."""

    max_qubits = Config.STATEVECTOR_MAX_QUBITS

    def run(self, c: Circuit, p_meas: float = 0.0) -> StateBranches:
        n = c.n_qubits
        if n > self.max_qubits:
            raise SimulationLimitError(f'statevector limited to {self.max_qubits} qubits, circuit has {n}')
        psi = np.zeros((2,) * n, dtype=complex)
        psi[(0,) * n] = 1.0
        branches: list[tuple[Bits, np.ndarray]] = [((0,) * c.n_clbits, psi)]

        for gate in c.gates:
            kind = gate.kind
            if kind is GateKind.MEASURE:
                branches = self._measure(branches, gate.qubits[0], gate.clbit, p_meas)
            elif kind is GateKind.CONDX:
                branches = [
                    (bits, apply_1q(s, X, gate.qubits[0]) if bits[gate.clbit] else s) for bits, s in branches
                ]
            elif gate.is_two_qubit:
                u = gate_matrix(gate)
                branches = [(bits, apply_2q(s, u, *gate.qubits)) for bits, s in branches]
            else:
                u = gate_matrix(gate)
                branches = [(bits, apply_1q(s, u, gate.qubits[0])) for bits, s in branches]
        return StateBranches(n, False, branches)

    @staticmethod
    def _measure(branches, q: int, k: int, p_meas: float):
        out = []
        for bits, s in branches:
            for m in (0, 1):
                proj = _project(s, (q,), m)
                if np.vdot(proj, proj).real < 1e-30:
                    continue
                for recorded, weight in ((m, 1.0 - p_meas), (1 - m, p_meas)):
                    if weight > 0:
                        out.append((_set_bit(bits, k, recorded), proj * np.sqrt(weight)))
        return out


class DensityMatrixSimulator:
    """Mixed-state evolution with two-qubit depolarising noise and readout flips."""

    max_qubits = Config.DENSITY_MATRIX_MAX_QUBITS

    def run(self, c: Circuit, noise: Optional[NoiseModel] = None, rho0: Optional[np.ndarray] = None) -> StateBranches:
        n = c.n_qubits
        if n > self.max_qubits:
            raise SimulationLimitError(f'density matrix limited to {self.max_qubits} qubits, circuit has {n}')
        noise = noise or NoiseModel()
        if rho0 is None:
            rho = np.zeros((2,) * (2 * n), dtype=complex)
            rho[(0,) * (2 * n)] = 1.0
        else:
            rho = np.asarray(rho0, dtype=complex).reshape((2,) * (2 * n))
        branches: dict[Bits, np.ndarray] = {(0,) * c.n_clbits: rho}

        for gate in c.gates:
            kind = gate.kind
            if kind is GateKind.MEASURE:
                branches = self._measure(branches, n, gate.qubits[0], gate.clbit, noise.p_meas)
            elif kind is GateKind.CONDX:
                q = gate.qubits[0]
                branches = {
                    bits: self._unitary_1q(r, X, q, n) if bits[gate.clbit] else r for bits, r in branches.items()
                }
            elif gate.is_two_qubit:
                u = gate_matrix(gate)
                a, b = gate.qubits
                repeats = NATIVE_COST[kind.name] if noise.p_ecr > 0 else 0
                new = {}
                for bits, r in branches.items():
                    r = apply_2q(r, u, a, b)
                    r = apply_2q(r, u.conj(), n + a, n + b)
                    for _ in range(repeats):
                        r = depolarize_2q(r, n, a, b, noise.p_ecr)
                    new[bits] = r
                branches = new
            else:
                u = gate_matrix(gate)
                branches = {bits: self._unitary_1q(r, u, gate.qubits[0], n) for bits, r in branches.items()}
        return StateBranches(n, True, list(branches.items()))

    @staticmethod
    def _unitary_1q(rho: np.ndarray, u: np.ndarray, q: int, n: int) -> np.ndarray:
        return apply_1q(apply_1q(rho, u, q), u.conj(), n + q)

    @staticmethod
    def _measure(branches: dict[Bits, np.ndarray], n: int, q: int, k: int, p_meas: float) -> dict[Bits, np.ndarray]:
        out: dict[Bits, np.ndarray] = {}
        for bits, r in branches.items():
            for m in (0, 1):
                proj = _project(r, (q, n + q), m)
                for recorded, weight in ((m, 1.0 - p_meas), (1 - m, p_meas)):
                    if weight == 0:
                        continue
                    key = _set_bit(bits, k, recorded)
                    contribution = proj * weight
                    out[key] = out[key] + contribution if key in out else contribution
        return out


def depolarize_2q(rho: np.ndarray, n: int, a: int, b: int, p: float) -> np.ndarray:
    """(1 - p) rho + p (I/4 on a, b) x Tr_ab rho: every non-identity Pauli on (a, b) decays by 1 - p."""
    return (1.0 - p) * rho + p * _fully_mix(_fully_mix(rho, n, a), n, b)


def _fully_mix(rho: np.ndarray, n: int, q: int) -> np.ndarray:
    reduced = np.trace(rho, axis1=q, axis2=n + q)
    mixed = np.tensordot(reduced, np.eye(2) / 2, axes=0)
    return np.moveaxis(mixed, [-2, -1], [q, n + q])


def simulate(c: Circuit, noise: Optional[NoiseModel] = None) -> StateBranches:
    """Statevector when there is no gate noise, density matrix otherwise."""
    noise = noise or NoiseModel()
    if noise.p_ecr > 0:
        logger.debug('density-matrix simulation of %d qubits', c.n_qubits)
        return DensityMatrixSimulator().run(c, noise)
    logger.debug('statevector simulation of %d qubits', c.n_qubits)
    return StatevectorSimulator().run(c, noise.p_meas)
