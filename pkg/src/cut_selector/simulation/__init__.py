"""
Simulation components: exact state evolution with noise, single-gate
quasi-probability decomposition and expectation estimation.
"""
from .estimation import (
    BranchCircuit,
    DirectEstimator,
    MeasurementGroup,
    OutcomeModel,
    QpdEstimator,
    allocate_shots,
    branch_circuits,
    exact_expectation,
    exact_variance,
    measurement_groups,
    qpd_estimate,
    routed_circuit,
    sample_expectation,
)
from .qpd import QpdBranch, branch_superoperator, channel_error, gamma, gate_superoperator, qpd_branches
from .simulator import DensityMatrixSimulator, StateBranches, StatevectorSimulator, depolarize_2q, simulate

__all__ = [
    'BranchCircuit',
    'DirectEstimator',
    'MeasurementGroup',
    'OutcomeModel',
    'QpdEstimator',
    'allocate_shots',
    'branch_circuits',
    'exact_expectation',
    'exact_variance',
    'measurement_groups',
    'qpd_estimate',
    'routed_circuit',
    'sample_expectation',
    'QpdBranch',
    'branch_superoperator',
    'channel_error',
    'gamma',
    'gate_superoperator',
    'qpd_branches',
    'DensityMatrixSimulator',
    'StateBranches',
    'StatevectorSimulator',
    'depolarize_2q',
    'simulate',
]
