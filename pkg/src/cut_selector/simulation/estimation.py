"""Expectation values of observables: exact, sampled, and reconstructed from QPD branches.

An observable is measured as a set of qubit-wise commuting groups; a shot
budget of M means M shots for every group. Outcome distributions are
computed once per circuit and then sampled multinomially.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..circuit.ir import Circuit, replace_gate
from ..circuit.observable import Observable
from ..config import Config
from ..exceptions import ParameterError
from ..models.base import CutSelection, EstimateResult, NoiseModel, Strategy
from ..routing.coupling import CouplingMap
from ..routing.sabre import compact_routed, fill_slot, remap_observable, route
from .qpd import qpd_branches
from .simulator import simulate

logger = logging.getLogger(__name__)

N_BRANCHES = 6


@dataclass
class MeasurementGroup:
    basis: list[str]  # per qubit; 'I' where no term in the group acts
    terms: list[tuple[float, str]] = field(default_factory=list)

    def accepts(self, pauli: str) -> bool:
        return all(p == 'I' or b in ('I', p) for p, b in zip(pauli, self.basis))

    def add(self, coeff: float, pauli: str) -> None:
        for q, p in enumerate(pauli):
            if p != 'I':
                self.basis[q] = p
        self.terms.append((coeff, pauli))

    @property
    def support(self) -> list[int]:
        return [q for q, b in enumerate(self.basis) if b != 'I']

    def values(self) -> np.ndarray:
        """Value of the group's operator sum for every Z-basis outcome (qubit 0 most significant)."""
        n = len(self.basis)
        index = np.arange(2**n)
        total = np.zeros(2**n)
        for coeff, pauli in self.terms:
            parity = np.zeros(2**n, dtype=np.int64)
            for q, p in enumerate(pauli):
                if p != 'I':
                    parity ^= (index >> (n - 1 - q)) & 1
            total += coeff * (1 - 2 * parity)
        return total


def measurement_groups(obs: Observable) -> list[MeasurementGroup]:
    """Greedy qubit-wise commuting grouping in term order."""
    groups: list[MeasurementGroup] = []
    for coeff, pauli in obs.terms:
        for group in groups:
            if group.accepts(pauli):
                group.add(coeff, pauli)
                break
        else:
            group = MeasurementGroup(['I'] * obs.n_qubits)
            group.add(coeff, pauli)
            groups.append(group)
    return groups


def _readout_flips(probs: np.ndarray, n: int, qubits: list[int], p: float) -> np.ndarray:
    t = probs.reshape((2,) * n)
    for q in qubits:
        t = (1.0 - p) * t + p * np.flip(t, axis=q)
    return t.reshape(-1)


@dataclass
class OutcomeModel:
    """Per-group outcome distributions and values for one circuit and observable."""

    probabilities: list[np.ndarray]
    values: list[np.ndarray]

    @classmethod
    def build(cls, c: Circuit, obs: Observable, noise: Optional[NoiseModel] = None) -> 'OutcomeModel':
        if obs.n_qubits != c.n_qubits:
            raise ParameterError('observable', f'acts on {obs.n_qubits} qubits, circuit has {c.n_qubits}')
        noise = noise or NoiseModel()
        state = simulate(c, noise)
        probabilities, values = [], []
        for group in measurement_groups(obs):
            probs = state.probabilities(''.join(group.basis))
            if noise.p_meas > 0:
                probs = _readout_flips(probs, c.n_qubits, group.support, noise.p_meas)
            probs = np.clip(probs, 0.0, None)
            probabilities.append(probs / probs.sum())
            values.append(group.values())
        return cls(probabilities, values)

    def expectation(self) -> float:
        return float(sum(p @ v for p, v in zip(self.probabilities, self.values)))

    def variance(self) -> float:
        """Single-shot variance of the estimator: sum of the per-group variances."""
        return float(sum(p @ (v * v) - (p @ v) ** 2 for p, v in zip(self.probabilities, self.values)))

    def sample(self, shots: int, rng: np.random.Generator) -> float:
        total = 0.0
        for p, v in zip(self.probabilities, self.values):
            counts = rng.multinomial(shots, p)
            total += counts @ v / shots
        return float(total)


def _check_shots(shots: int) -> None:
    if shots < 1:
        raise ParameterError('shots', f'{shots} < 1')


def exact_expectation(c: Circuit, obs: Observable, noise: Optional[NoiseModel] = None) -> float:
    return OutcomeModel.build(c, obs, noise).expectation()


def exact_variance(c: Circuit, obs: Observable, noise: Optional[NoiseModel] = None) -> float:
    return OutcomeModel.build(c, obs, noise).variance()


def sample_expectation(
    c: Circuit, obs: Observable, shots: int, noise: Optional[NoiseModel] = None, seed: int = 0
) -> EstimateResult:
    _check_shots(shots)
    model = OutcomeModel.build(c, obs, noise)
    value = model.sample(shots, np.random.default_rng(seed))
    return EstimateResult(value=value, strategy='direct', shots=[shots], seed=seed)


def routed_circuit(
    c: Circuit, obs: Observable, cm: CouplingMap, routing_seed: int = Config.ROUTING_SEEDS[0]
) -> tuple[Circuit, Observable]:
    """Compacted routed circuit and the observable moved to the final layout."""
    result = route(c, cm, routing_seed)
    compact, final_map = compact_routed(result)
    return compact, remap_observable(obs, final_map, compact.n_qubits)


@dataclass
class BranchCircuit:
    coefficient: float
    circuit: Circuit
    observable: Observable


def branch_circuits(
    c: Circuit,
    cut: CutSelection,
    obs: Observable,
    cm: Optional[CouplingMap] = None,
    routing_seed: int = Config.ROUTING_SEEDS[0],
) -> list[BranchCircuit]:
    """The six QPD branch circuits of a cut, optionally routed onto a device.

    Routed branches share one routing of the circuit in which the cut gate is
    a placeholder, so all of them carry identical SWAPs.
    """
    index = cut.gate_index
    if not 0 <= index < len(c.gates):
        raise ParameterError('gate_index', f'{index} outside 0..{len(c.gates) - 1}')
    gate = c.gates[index]
    if not gate.is_two_qubit:
        raise ParameterError('gate_index', f'gate {index} ({gate.kind.value}) is not a two-qubit gate')
    branches = qpd_branches(gate, clbit=c.n_clbits)

    if cm is None:
        return [BranchCircuit(br.coefficient, replace_gate(c, index, br.gates, extra_clbits=1), obs) for br in branches]

    template = route(c, cm, routing_seed, virtual={index})
    out = []
    for br in branches:
        physical = fill_slot(template, index, br.gates, extra_clbits=1)
        compact, final_map = compact_routed(template, circuit=physical)
        out.append(BranchCircuit(br.coefficient, compact, remap_observable(obs, final_map, compact.n_qubits)))
    return out


def allocate_shots(shots: int, strategy: Strategy) -> list[int]:
    """Per-branch shots: the shared budget split with the remainder to the first branches, or 1.5 M each."""
    _check_shots(shots)
    if strategy == 'shared':
        base, remainder = divmod(shots, N_BRANCHES)
        if base == 0:
            raise ParameterError('shots', f'shared budget of {shots} leaves a branch without shots')
        return [base + (1 if k < remainder else 0) for k in range(N_BRANCHES)]
    if strategy == 'per_subcircuit_1_5x':
        return [shots * 3 // 2] * N_BRANCHES
    raise ParameterError('strategy', f'unknown strategy {strategy!r}')


class DirectEstimator:
    """Uncut circuit, optionally routed; distributions computed once."""

    def __init__(
        self,
        c: Circuit,
        obs: Observable,
        noise: Optional[NoiseModel] = None,
        cm: Optional[CouplingMap] = None,
        routing_seed: int = Config.ROUTING_SEEDS[0],
    ):
        if cm is not None:
            c, obs = routed_circuit(c, obs, cm, routing_seed)
        self.model = OutcomeModel.build(c, obs, noise)

    def exact(self) -> EstimateResult:
        return EstimateResult(value=self.model.expectation(), strategy='direct', shots=[None])

    def estimate(self, shots: int, seed: int) -> EstimateResult:
        _check_shots(shots)
        value = self.model.sample(shots, np.random.default_rng(seed))
        return EstimateResult(value=value, strategy='direct', shots=[shots], seed=seed)


class QpdEstimator:
    """Reconstruction sum_k c_k <O>_k over the branches of one cut."""

    def __init__(
        self,
        c: Circuit,
        cut: CutSelection,
        obs: Observable,
        noise: Optional[NoiseModel] = None,
        cm: Optional[CouplingMap] = None,
        routing_seed: int = Config.ROUTING_SEEDS[0],
    ):
        self.branches = branch_circuits(c, cut, obs, cm, routing_seed)
        self.coefficients = [br.coefficient for br in self.branches]
        self.models = [OutcomeModel.build(br.circuit, br.observable, noise) for br in self.branches]
        logger.debug('prepared %d QPD branches for gate %d of %s', len(self.branches), cut.gate_index, c.name)

    def _combine(self, per_branch: list[float]) -> float:
        return float(sum(ck * v for ck, v in zip(self.coefficients, per_branch)))

    def exact(self, strategy: Strategy = 'shared') -> EstimateResult:
        per_branch = [m.expectation() for m in self.models]
        return EstimateResult(
            value=self._combine(per_branch),
            strategy=strategy,
            shots=[None] * len(self.models),
            per_branch=per_branch,
            coefficients=self.coefficients,
        )

    def variance(self, shots: int, strategy: Strategy) -> float:
        """Exact variance of the sampled reconstruction for a budget."""
        allocation = allocate_shots(shots, strategy)
        return float(sum(ck**2 * m.variance() / mk for ck, m, mk in zip(self.coefficients, self.models, allocation)))

    def estimate(self, shots: int, strategy: Strategy, seed: int) -> EstimateResult:
        allocation = allocate_shots(shots, strategy)
        # one stream per branch, independent of evaluation order
        per_branch = [
            m.sample(mk, np.random.default_rng([seed, k])) for k, (m, mk) in enumerate(zip(self.models, allocation))
        ]
        return EstimateResult(
            value=self._combine(per_branch),
            strategy=strategy,
            shots=allocation,
            per_branch=per_branch,
            coefficients=self.coefficients,
            seed=seed,
        )


def qpd_estimate(
    c: Circuit,
    cut: CutSelection,
    obs: Observable,
    shots: Optional[int],
    strategy: Strategy = 'shared',
    noise: Optional[NoiseModel] = None,
    seed: int = 0,
    cm: Optional[CouplingMap] = None,
    routing_seed: int = Config.ROUTING_SEEDS[0],
) -> EstimateResult:
    """QPD estimate of <O>; ``shots=None`` evaluates every branch exactly."""
    estimator = QpdEstimator(c, cut, obs, noise, cm, routing_seed)
    if shots is None:
        return estimator.exact(strategy)
    return estimator.estimate(shots, strategy, seed)
