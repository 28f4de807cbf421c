import math

import numpy as np
import pytest
from scipy import stats as scipy_stats

from cut_selector.analysis import (
    bench_instance,
    bench_tfim,
    breakeven_grid,
    enrichment,
    enrichment_by_condition,
    failure_cell_rows,
    failure_sweep,
    inter_vs_intra,
    j1j2_error_model,
    m_star,
    mse_model,
    mu_sweep,
    p_meas_crossover,
    run_bench,
    student_t_sf2,
    summarize,
    t_test_one_sample,
    t_test_two_sample,
    variance_factor,
)
from cut_selector.analysis import experiments
from cut_selector.circuit import Circuit, Gate, Observable, circuit_from_graph
from cut_selector.exceptions import ParameterError
from cut_selector.graphs import generate, inter_community_fraction, is_inter_edge, sbm_partition
from cut_selector.models import (
    BarbellSpec,
    BenchConfig,
    BenchFamily,
    BreakevenParams,
    CutSelection,
    ErdosRenyiSpec,
    ExperimentRecord,
    FailureSweepConfig,
    RunConfig,
    SbmSpec,
    TfimSpec,
)
from cut_selector.selection import select_stage1_only
from cut_selector.storage import columns


def params(**overrides) -> BreakevenParams:
    values = dict(p=0.005, n_ecr=200, delta_n=15, sigma_h=7.0, h_ideal=5.0, gamma=3.0)
    values.update(overrides)
    return BreakevenParams(**values)


def record(condition: str, delta_tw2s: float, delta_random: list[float], **fields) -> ExperimentRecord:
    return ExperimentRecord(
        instance_id=f'{condition}/{delta_tw2s}',
        family='test',
        condition=condition,
        seed=0,
        delta_tw2s=delta_tw2s,
        delta_random=delta_random,
        **fields,
    )


# breakeven model


def test_breakeven_example_drops_below_a_thousand_shots():
    bp = params()
    b_base = 5 * (1 - math.exp(-0.005 * 200))
    b_cut = 5 * (1 - math.exp(-0.005 * 185))
    expected = 8 * 49 / (b_base**2 - b_cut**2)
    assert m_star(bp) == pytest.approx(expected, rel=1e-9)
    assert m_star(bp) < 1000


def test_m_star_is_infinite_without_gain():
    assert m_star(params(h_ideal=0.0)) == math.inf
    assert m_star(params(delta_n=0)) == math.inf


def test_m_star_decreases_in_delta_n_and_h_ideal():
    by_delta = [m_star(params(delta_n=dn)) for dn in (1, 2, 5, 10, 15, 20, 30, 50)]
    by_h = [m_star(params(h_ideal=h)) for h in (0.5, 1.0, 2.0, 5.0, 8.0)]
    assert all(a > b for a, b in zip(by_delta, by_delta[1:]))
    assert all(a > b for a, b in zip(by_h, by_h[1:]))


def test_mse_crosses_at_the_breakeven_shot_count():
    bp = params()
    m = m_star(bp)
    base, cut = mse_model(bp, math.floor(m) - 1)
    assert cut > base
    base, cut = mse_model(bp, math.ceil(m) + 1)
    assert cut < base
    with pytest.raises(ParameterError, match='shots'):
        mse_model(bp, 0)


def test_variance_factor():
    assert variance_factor(params(), 'shared') == 9.0
    assert variance_factor(params(), 'per_subcircuit_1_5x') == 1.0


def test_breakeven_params_validation():
    with pytest.raises(ValueError, match='Invalid p'):
        params(p=0.0)
    with pytest.raises(ValueError, match='Invalid delta_n'):
        params(delta_n=300)


def test_breakeven_grid():
    rows = breakeven_grid(0.005, 200, 7.0, [0, 15], [0.0, 5.0])
    assert len(rows) == 4
    assert set(rows[0]) == set(columns('breakeven'))
    assert [r['m_star'] == math.inf for r in rows] == [True, True, True, False]
    with pytest.raises(ParameterError, match='Invalid sigma_h'):
        breakeven_grid(0.005, 200, -1.0, [15], [5.0])


# statistics


def test_t_tests_on_hand_cases():
    assert t_test_one_sample([-1, 1, -1, 1]).t == 0.0
    assert t_test_one_sample([-1, 1, -1, 1]).p == pytest.approx(1.0)
    result = t_test_one_sample([0, 2])
    assert (result.t, result.p, result.dof) == (pytest.approx(1.0), pytest.approx(0.5), 1)
    assert t_test_one_sample([5.0, 5.1, 4.9, 5.05]).p < 1e-3
    same = t_test_two_sample([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert same.t == 0.0 and same.p == pytest.approx(1.0)
    shifted = t_test_two_sample([101.0, 102.0, 103.0, 101.5], [1.0, 2.0, 3.0, 1.5])
    assert shifted.p < 1e-6


@pytest.mark.parametrize('dof', [1, 2, 5, 13.7, 40])
def test_student_t_tail_matches_scipy(dof):
    for t in (0.0, 0.3, 1.0, 2.2, 5.0, -3.1):
        assert student_t_sf2(t, dof) == pytest.approx(2 * scipy_stats.t.sf(abs(t), dof), abs=1e-8)


def test_welch_test_matches_scipy():
    rng = np.random.default_rng(0)
    a, b = rng.normal(0.0, 1.0, 12), rng.normal(0.5, 2.0, 9)
    ours = t_test_two_sample(a, b)
    reference = scipy_stats.ttest_ind(a, b, equal_var=False)
    assert ours.t == pytest.approx(reference.statistic)
    assert ours.p == pytest.approx(reference.pvalue, abs=1e-8)


def test_t_test_degenerate_samples():
    with pytest.raises(ParameterError, match='at least 2'):
        t_test_one_sample([1.0])
    with pytest.raises(ParameterError, match='variance'):
        t_test_one_sample([2.0, 2.0, 2.0])


# records, enrichment and summaries


def test_experiment_record_derived_fields():
    r = record('c', 5.0, [1.0, 3.0])
    assert r.delta_random_mean == 2.0
    assert r.delta_adv == 3.0
    assert r.win is True
    assert record('c', 1.0, []).delta_adv is None


def test_enrichment():
    rows = [record('sbm', 1.0, [0.0], edge_type='inter', stage1_edge_type='intra', r_inter=1 / 7) for _ in range(4)]
    assert enrichment(rows) == pytest.approx(7.0)
    assert enrichment(rows, 'stage1_only') == 0.0
    assert enrichment([record('sbm', 1.0, [0.0])]) is None
    assert enrichment([record('x', 1.0, [0.0], edge_type='intra', r_inter=0.0)]) is None
    assert enrichment_by_condition(rows) == {'sbm': pytest.approx(7.0)}


def test_summarize_groups_by_condition():
    rows = summarize(
        [
            record('a', 3.0, [1.0]),
            record('a', 1.0, [1.0]),
            record('b', 0.0, [1.0]),
            ExperimentRecord(instance_id='b/x', family='t', condition='b', seed=1, error='boom'),
        ]
    )
    a, b = rows
    assert a['condition'] == 'a' and a['n'] == 2
    assert a['mean_delta_adv'] == pytest.approx(1.0)
    assert a['win_rate'] == 0.5
    assert a['t'] == pytest.approx(1.0) and a['p'] == pytest.approx(0.5)
    assert b['n'] == 1 and b['t'] is None
    assert set(a) == set(columns('summary'))


def test_inter_vs_intra():
    rows = [record('s', d, [0.0], edge_type='inter') for d in (4.0, 5.0, 6.0)]
    rows += [record('s', d, [0.0], edge_type='intra') for d in (0.0, 1.0, -1.0)]
    result = inter_vs_intra(rows)
    assert result.t > 0 and result.p < 0.01


# benchmark orchestration


def test_bench_instance_records_the_bridge(heavy_hex_small):
    r = bench_instance(BarbellSpec(k=3), heavy_hex_small, routing_seeds=[1, 2], random_trials=2)
    assert r.error is None
    assert r.instance_id == 'barbell(k=3,m=0)/seed=0'
    assert r.tw2s_edge == (2, 3) and r.tw2s_gate_index == 3
    assert r.edge_type in ('inter', 'intra')
    assert 0.0 <= r.r_inter <= 1.0
    assert len(r.delta_random) == 2
    assert r.ecr_tw2s_cut == pytest.approx(r.ecr_uncut - r.delta_tw2s)


def test_bench_instance_records_failures(heavy_hex_small):
    r = bench_instance(ErdosRenyiSpec(n=4, p=0.0), heavy_hex_small, routing_seeds=[1], random_trials=1)
    assert r.error is not None and 'two-qubit' in r.error
    assert r.delta_adv is None


def test_bench_instance_reports_oracle_efficiencies(heavy_hex_small):
    r = bench_instance(BarbellSpec(k=3), heavy_hex_small, routing_seeds=[1], random_trials=2, oracle=True)
    assert r.error is None
    assert r.oracle_max is not None and r.oracle_max >= r.delta_tw2s
    if r.oracle_max > 0:
        assert r.oracle_eff_tw2s == pytest.approx(r.delta_tw2s / r.oracle_max)
        assert r.oracle_eff_stage1 == pytest.approx(r.delta_stage1 / r.oracle_max)
        assert r.oracle_eff_random == pytest.approx(r.delta_random_mean / r.oracle_max)
    assert {'oracle_eff_tw2s', 'oracle_eff_stage1', 'oracle_eff_random'} <= set(columns('experiments'))


def test_a_failing_method_leaves_the_others_in_the_row(heavy_hex_small, monkeypatch):
    def broken(*args, **kwargs):
        raise RuntimeError('boom')

    monkeypatch.setattr(experiments, 'select_stage1_only', broken)
    r = bench_instance(BarbellSpec(k=3), heavy_hex_small, routing_seeds=[1], random_trials=1)
    assert r.error == 'stage1_only: boom'
    assert r.delta_stage1 is None
    assert r.tw2s_edge == (2, 3)
    assert len(r.delta_random) == 1 and r.delta_adv is not None


def test_run_bench_keeps_declaration_order(heavy_hex_small):
    config = RunConfig(
        routing_seeds=[1],
        bench=BenchConfig(random_trials=1, families=[BenchFamily(spec=BarbellSpec(k=3), seeds=[2, 1])]),
    )
    records = run_bench(config, heavy_hex_small)
    assert [r.seed for r in records] == [2, 1]
    assert run_bench(RunConfig(), heavy_hex_small) == []


def test_mu_sweep_labels_edges(heavy_hex_small):
    records = mu_sweep([0.1], seeds=[0, 1], cm=heavy_hex_small, n_per=4, routing_seeds=[1], random_trials=1)
    assert len(records) == 2
    for r in records:
        if r.error is None:
            assert r.edge_type in ('inter', 'intra')
            assert 0.0 <= r.r_inter <= 1.0


# noisy sweeps


def test_failure_cell_rows_have_the_winrate_columns(heavy_hex_small):
    cfg = FailureSweepConfig(n_values=[4], trotter_steps=[1], budgets=[600], repetitions=2, topology='chain')
    rows = failure_cell_rows(TfimSpec.chain(4, 1), cfg, heavy_hex_small, routing_seeds=[1])
    assert [(r['shots'], r['strategy']) for r in rows] == [(600, 'shared'), (600, 'per_subcircuit_1_5x')]
    for r in rows:
        assert set(r) <= set(columns('winrate'))
        if r['error'] is None:
            assert 0.0 <= r['win_rate'] <= 1.0
            assert r['win_rate'] * 2 == int(r['win_rate'] * 2)


def test_p_meas_crossover_changes_sign_near_p_ecr():
    c = Circuit(2, [Gate.h(0), Gate.h(1), Gate.rzz(0, 1, math.pi / 2)])
    cut = CutSelection(gate_index=2, edge=(0, 1), method='stage1_only')
    p = 0.01
    rows = p_meas_crossover(c, cut, Observable.single('YZ'), p, [0.0, 0.005, 0.02])
    assert [r['qpd_advantage'] > 0 for r in rows] == [True, True, False]
    assert rows[1]['bias_base'] == pytest.approx(1 - (1 - p) ** 2 * (1 - 2 * 0.005) ** 2)
    assert rows[2]['bias_qpd'] == pytest.approx(1 - (1 - 2 * 0.02) ** 3)
    assert set(rows[0]) == set(columns('crossover'))


def test_j1j2_error_model_rows(heavy_hex_small):
    rows = j1j2_error_model(6, 1, heavy_hex_small, budgets=[500], routing_seeds=[1], random_trials=2)
    assert [r['condition'] for r in rows] == ['baseline', 'tw2s_1x', 'tw2s_9x', 'random_1x', 'random_9x']
    base = rows[0]
    assert base['mse'] == pytest.approx(base['bias'] ** 2 + 49 / 500)
    assert rows[2]['mse'] - rows[2]['bias'] ** 2 == pytest.approx(9 * 49 / 500)


# directional reproductions on the full device


@pytest.mark.slow
@pytest.mark.parametrize('k', [3, 4])
def test_barbell_cut_lands_on_the_bridge(k, heavy_hex_127):
    records = [bench_instance(BarbellSpec(k=k), heavy_hex_127, random_seed=s) for s in range(5)]
    for r in records:
        assert r.error is None
        assert r.tw2s_edge == (k - 1, k)
        assert r.ecr_uncut >= r.n_two_qubit
        assert len(r.delta_random) == 5


@pytest.mark.slow
def test_stage1_enrichment_on_strong_communities():
    partition = sbm_partition(8, 2)
    records = []
    for s in range(2000):
        spec = SbmSpec(n_per=8, p_in=0.5, p_out=0.05, seed=s)
        g = generate(spec)
        if not any(is_inter_edge(partition, e) for e in g.edges):
            continue
        cut = select_stage1_only(circuit_from_graph(g))
        records.append(
            ExperimentRecord(
                instance_id=str(s),
                family='sbm',
                condition=spec.condition,
                seed=s,
                stage1_edge=cut.edge,
                stage1_edge_type='inter' if is_inter_edge(partition, cut.edge) else 'intra',
                r_inter=inter_community_fraction(g, partition),
            )
        )
    assert len(records) > 1500
    assert enrichment(records, 'stage1_only') > 2


@pytest.mark.slow
def test_sbm_advantage_for_strong_communities(heavy_hex_127):
    records = mu_sweep([0.10, 0.15, 0.20], seeds=range(30), cm=heavy_hex_127)
    values = [r.delta_adv for r in records if r.delta_adv is not None]
    assert len(values) >= 80
    result = t_test_one_sample(values)
    assert result.t > 0 and result.p < 0.05


@pytest.mark.slow
def test_j1j2_cut_saves_more_than_random(heavy_hex_127):
    r = bench_tfim(TfimSpec.j1j2(8), heavy_hex_127)
    assert r.delta_tw2s > 2 * r.delta_random_mean


@pytest.mark.slow
def test_even_trotter_steps_win_more_often(heavy_hex_127):
    cfg = FailureSweepConfig(
        n_values=[4], trotter_steps=[1, 2, 3, 4], budgets=[10_000], strategies=['shared'], repetitions=40
    )
    rows = failure_sweep(cfg, heavy_hex_127)
    rate = {r['trotter_steps']: r['win_rate'] for r in rows if r['error'] is None}
    even = [rate[t] for t in (2, 4) if t in rate]
    odd = [rate[t] for t in (1, 3) if t in rate]
    assert even and odd
    assert sum(even) / len(even) > sum(odd) / len(odd)
