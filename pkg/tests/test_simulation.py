import numpy as np
import pytest

from cut_selector.circuit import Circuit, Gate, Observable
from cut_selector.exceptions import ParameterError, SimulationLimitError
from cut_selector.models import NoiseModel
from cut_selector.simulation import (
    DensityMatrixSimulator,
    DirectEstimator,
    StatevectorSimulator,
    depolarize_2q,
    exact_expectation,
    exact_variance,
    measurement_groups,
    sample_expectation,
    simulate,
)


def bell() -> Circuit:
    return Circuit(2, [Gate.h(0), Gate.cx(0, 1)])


def test_bell_state_probabilities():
    state = StatevectorSimulator().run(bell())
    np.testing.assert_allclose(state.probabilities(), [0.5, 0, 0, 0.5], atol=1e-12)
    np.testing.assert_allclose(state.probabilities('XX'), [0.5, 0, 0, 0.5], atol=1e-12)
    assert state.total_probability() == pytest.approx(1.0)


def test_density_matrix_matches_statevector_without_noise():
    c = Circuit(3, [Gate.h(0), Gate.rx(1, 0.7), Gate.rzz(0, 1, 0.3), Gate.cz(1, 2), Gate.sx(2), Gate.swap(0, 2)])
    rho_sv = StatevectorSimulator().run(c).density_matrix()
    rho_dm = DensityMatrixSimulator().run(c).density_matrix()
    np.testing.assert_allclose(rho_dm, rho_sv, atol=1e-12)


def test_mid_circuit_measurement_and_classical_control():
    # measuring |+> and flipping on outcome 1 always leaves |0>
    c = Circuit(1, [Gate.h(0), Gate.measure(0, 0), Gate.condx(0, 0)], n_clbits=1)
    for state in (StatevectorSimulator().run(c), DensityMatrixSimulator().run(c)):
        np.testing.assert_allclose(state.probabilities(), [1.0, 0.0], atol=1e-12)
        assert len(state.branches) == 2


def test_readout_error_on_final_measurement():
    c = Circuit(1, [Gate.x(0)])
    obs = Observable.single('Z')
    assert exact_expectation(c, obs, NoiseModel(p_meas=0.1)) == pytest.approx(-0.8)


def test_depolarising_noise_scales_with_native_cost():
    p = 0.1
    cx = Circuit(2, [Gate.x(0), Gate.cx(0, 1)])
    assert exact_expectation(cx, Observable.single('ZZ'), NoiseModel(p_ecr=p)) == pytest.approx(1 - p)
    rzz = Circuit(2, [Gate.rzz(0, 1, 0.9)])
    assert exact_expectation(rzz, Observable.single('ZZ'), NoiseModel(p_ecr=p)) == pytest.approx((1 - p) ** 2)


def test_full_depolarisation_mixes_the_pair():
    state = DensityMatrixSimulator().run(bell())
    rho = state.density_matrix().reshape((2,) * 4)
    mixed = depolarize_2q(rho, 2, 0, 1, 1.0).reshape(4, 4)
    np.testing.assert_allclose(mixed, np.eye(4) / 4, atol=1e-12)


def test_simulation_width_limits():
    wide = Circuit(13, [Gate.h(0)])
    with pytest.raises(SimulationLimitError):
        StatevectorSimulator().run(wide)
    with pytest.raises(SimulationLimitError):
        simulate(Circuit(9, [Gate.cx(0, 1)]), NoiseModel(p_ecr=0.01))


def test_measurement_groups_are_qubitwise_commuting():
    obs = Observable(2, [(1.0, 'ZZ'), (1.0, 'XI'), (1.0, 'IX'), (2.0, 'ZI'), (1.0, 'YY')])
    groups = measurement_groups(obs)
    assert [g.basis for g in groups] == [['Z', 'Z'], ['X', 'X'], ['Y', 'Y']]
    assert [len(g.terms) for g in groups] == [2, 2, 1]


def test_exact_variance_of_the_measurement_scheme():
    plus = Circuit(2, [Gate.h(0), Gate.h(1)])
    assert exact_variance(plus, Observable.single('ZI')) == pytest.approx(1.0)
    assert exact_variance(plus, Observable.single('XX')) == pytest.approx(0.0, abs=1e-12)
    # two groups with one unit-variance term each
    assert exact_variance(plus, Observable(2, [(1.0, 'ZZ'), (1.0, 'YI')])) == pytest.approx(2.0)


def test_sampling_is_seeded_and_unbiased():
    c = Circuit(1, [Gate.rx(0, 1.0)])
    obs = Observable.single('Z')
    first = sample_expectation(c, obs, shots=20_000, seed=4)
    assert first == sample_expectation(c, obs, shots=20_000, seed=4)
    assert first.shots == [20_000]
    assert first.value == pytest.approx(np.cos(1.0), abs=0.03)
    with pytest.raises(ParameterError, match='shots'):
        sample_expectation(c, obs, shots=0)


def test_observable_width_must_match():
    with pytest.raises(ParameterError, match='observable'):
        exact_expectation(bell(), Observable.single('Z'))


def test_direct_estimator_exact_mode():
    result = DirectEstimator(bell(), Observable.single('ZZ')).exact()
    assert result.value == pytest.approx(1.0)
    assert result.exact and result.strategy == 'direct'
