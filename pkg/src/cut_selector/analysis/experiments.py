"""Benchmark orchestration: per-instance ECR records and their statistics."""

import logging
import statistics
from collections import defaultdict
from typing import Callable, Optional, Sequence

from ..circuit.builders import build_tfim, circuit_from_graph
from ..circuit.ir import Circuit
from ..config import Config
from ..exceptions import CutSelectorError
from ..graphs.communities import (
    Partition,
    inter_community_fraction,
    is_inter_edge,
    label_propagation_communities,
    modularity,
)
from ..graphs.generators import density_matched_er, generate, sbm_partition
from ..graphs.ugraph import UGraph
from ..models.base import (
    ExperimentRecord,
    GraphFamilySpec,
    RunConfig,
    SbmSpec,
    SelectionParams,
    TfimSpec,
)
from ..routing.coupling import CouplingMap
from ..routing.evaluation import delta_ecr, ecr_count, oracle_efficiency, oracle_eval
from ..selection.selector import random_cut, select_cut, select_stage1_only
from .stats import TTestResult, t_test_one_sample, t_test_two_sample

logger = logging.getLogger(__name__)


def bench_circuit(
    c: Circuit,
    cm: CouplingMap,
    *,
    instance_id: str,
    family: str,
    condition: str,
    seed: int,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    random_seed: int = 0,
    selection: SelectionParams = SelectionParams(),
    partition: Optional[Partition] = None,
    graph: Optional[UGraph] = None,
    oracle: bool = False,
) -> ExperimentRecord:
    """Route the circuit uncut, with the TW2S cut, the Stage-1 cut and random cuts.

    Each method runs on its own: a failure is logged, recorded as
    ``"<method>: <message>"`` in the row's ``error`` field, and the other
    methods still fill their columns. With ``oracle`` the row also carries the
    exhaustive per-edge maximum and each method's fraction of it.
    """
    fields: dict = dict(
        instance_id=instance_id,
        family=family,
        condition=condition,
        seed=seed,
        n_qubits=c.n_qubits,
        n_two_qubit=c.count_two_qubit(),
    )
    errors: list[str] = []

    def attempt(method: str, run: Callable[[], None]) -> None:
        try:
            run()
        except Exception as exc:
            logger.warning('instance %s: %s failed: %s', instance_id, method, exc)
            errors.append(f'{method}: {exc}')

    def uncut() -> None:
        fields['ecr_uncut'] = ecr_count(c, cm, routing_seeds)

    def tw2s() -> None:
        cut = select_cut(c, selection.k, selection.alpha, selection.beta, selection.alpha2, selection.beta2)
        d = delta_ecr(c, cut, cm, routing_seeds, baseline=fields['ecr_uncut'])
        fields.update(delta_tw2s=d, ecr_tw2s_cut=fields['ecr_uncut'] - d, tw2s_edge=cut.edge,
                      tw2s_gate_index=cut.gate_index)
        if partition is not None:
            fields['edge_type'] = 'inter' if is_inter_edge(partition, cut.edge) else 'intra'

    def stage1() -> None:
        cut = select_stage1_only(c, selection.k, selection.alpha, selection.beta)
        d = delta_ecr(c, cut, cm, routing_seeds, baseline=fields['ecr_uncut'])
        fields.update(stage1_edge=cut.edge, delta_stage1=d)
        if partition is not None:
            fields['stage1_edge_type'] = 'inter' if is_inter_edge(partition, cut.edge) else 'intra'

    def random_baseline() -> None:
        d = [
            delta_ecr(c, random_cut(c, random_seed + t), cm, routing_seeds, baseline=fields['ecr_uncut'])
            for t in range(random_trials)
        ]
        fields.update(delta_random=d, ecr_random_cut=fields['ecr_uncut'] - statistics.fmean(d))

    def communities() -> None:
        fields.update(r_inter=inter_community_fraction(graph, partition), modularity=modularity(graph, partition))

    def oracle_columns() -> None:
        table = oracle_eval(c, cm, routing_seeds)
        fields['oracle_max'] = table.max_delta
        for column, delta in (('oracle_eff_tw2s', fields.get('delta_tw2s')),
                              ('oracle_eff_stage1', fields.get('delta_stage1'))):
            if delta is not None:
                fields[column] = oracle_efficiency(table, delta)
        if fields.get('delta_random'):
            fields['oracle_eff_random'] = oracle_efficiency(table, statistics.fmean(fields['delta_random']))

    attempt('uncut', uncut)
    if 'ecr_uncut' in fields:
        attempt('tw2s', tw2s)
        attempt('stage1_only', stage1)
        attempt('random', random_baseline)
        if oracle:
            attempt('oracle', oracle_columns)
    if partition is not None and graph is not None and graph.num_edges:
        attempt('communities', communities)

    if errors:
        fields['error'] = '; '.join(errors)
    return ExperimentRecord(**fields)


def community_partition(spec: GraphFamilySpec, g: UGraph) -> Partition:
    """Planted blocks for SBM instances, label propagation for everything else."""
    if isinstance(spec, SbmSpec):
        return sbm_partition(spec.n_per, spec.m_communities)
    return label_propagation_communities(g, seed=spec.seed)


def bench_instance(
    spec: GraphFamilySpec,
    cm: CouplingMap,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    random_seed: int = 0,
    selection: SelectionParams = SelectionParams(),
    oracle: bool = False,
) -> ExperimentRecord:
    instance_id = f'{spec.condition}/seed={spec.seed}'
    try:
        g = generate(spec)
        partition = community_partition(spec, g) if g.num_edges else None
        c = circuit_from_graph(g, name=instance_id)
    except CutSelectorError as exc:
        logger.warning('instance %s failed: %s', instance_id, exc)
        return ExperimentRecord(
            instance_id=instance_id, family=spec.family, condition=spec.condition, seed=spec.seed, error=str(exc)
        )
    return bench_circuit(
        c,
        cm,
        instance_id=instance_id,
        family=spec.family,
        condition=spec.condition,
        seed=spec.seed,
        routing_seeds=routing_seeds,
        random_trials=random_trials,
        random_seed=random_seed,
        selection=selection,
        partition=partition,
        graph=g,
        oracle=oracle,
    )


def bench_tfim(
    spec: TfimSpec,
    cm: CouplingMap,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    random_seed: int = 0,
    selection: SelectionParams = SelectionParams(),
) -> ExperimentRecord:
    """Record for a Trotterised TFIM circuit (the J1-J2 routing study)."""
    c = build_tfim(spec)
    return bench_circuit(
        c,
        cm,
        instance_id=c.name,
        family=f'tfim_{spec.topology}',
        condition=f'tfim_{spec.topology}(n={spec.n},T={spec.trotter_steps})',
        seed=0,
        routing_seeds=routing_seeds,
        random_trials=random_trials,
        random_seed=random_seed,
        selection=selection,
    )


def run_bench(config: RunConfig, cm: CouplingMap) -> list[ExperimentRecord]:
    """All bench instances of a run configuration in declaration order."""
    records = []
    bench = config.bench
    for family in bench.families:
        for seed in family.seeds:
            spec = family.spec.model_copy(update={'seed': seed})
            record = bench_instance(
                spec,
                cm,
                config.routing_seeds,
                bench.random_trials,
                bench.random_seed,
                config.selection,
                bench.oracle,
            )
            logger.info('bench %s: delta_adv=%s', record.instance_id, record.delta_adv)
            records.append(record)
    return records


def _safe_t_test(values: list[float]) -> Optional[TTestResult]:
    try:
        return t_test_one_sample(values)
    except CutSelectorError:
        return None


def summarize(records: Sequence[ExperimentRecord]) -> list[dict]:
    """One row per condition: n, mean Delta_adv, win rate and the one-sample t test against 0."""
    grouped: dict[str, list[float]] = defaultdict(list)
    for r in records:
        values = grouped[r.condition]
        if r.delta_adv is not None:
            values.append(r.delta_adv)

    rows = []
    for condition, values in grouped.items():
        test = _safe_t_test(values) if len(values) >= 2 else None
        rows.append(
            {
                'condition': condition,
                'n': len(values),
                'mean_delta_adv': statistics.fmean(values) if values else None,
                'win_rate': sum(1 for v in values if v > 0) / len(values) if values else None,
                't': test.t if test else None,
                'p': test.p if test else None,
            }
        )
    return rows


def mu_sweep(
    mu_values: Sequence[float],
    seeds: Sequence[int],
    cm: CouplingMap,
    n_per: int = 8,
    m_communities: int = 2,
    p_in: float = 0.5,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    selection: SelectionParams = SelectionParams(),
) -> list[ExperimentRecord]:
    """SBM records over mixing ratios mu = p_out / p_in."""
    records = []
    for mu in mu_values:
        for seed in seeds:
            spec = SbmSpec(n_per=n_per, m_communities=m_communities, p_in=p_in, p_out=mu * p_in, seed=seed)
            records.append(bench_instance(spec, cm, routing_seeds, random_trials, seed, selection))
    return records


def density_control(
    specs: Sequence[SbmSpec],
    cm: CouplingMap,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    selection: SelectionParams = SelectionParams(),
) -> tuple[list[ExperimentRecord], list[ExperimentRecord], Optional[TTestResult]]:
    """SBM instances against density-matched Erdos-Renyi graphs; Welch test on Delta_adv."""
    sbm_records, er_records = [], []
    for spec in specs:
        sbm_records.append(bench_instance(spec, cm, routing_seeds, random_trials, spec.seed, selection))
        g = density_matched_er(generate(spec), seed=spec.seed)
        instance_id = f'er_control({spec.condition})/seed={spec.seed}'
        er_records.append(
            bench_circuit(
                circuit_from_graph(g, name=instance_id),
                cm,
                instance_id=instance_id,
                family='er_control',
                condition=f'er_control({spec.condition})',
                seed=spec.seed,
                routing_seeds=routing_seeds,
                random_trials=random_trials,
                random_seed=spec.seed,
                selection=selection,
            )
            if g.num_edges
            else ExperimentRecord(
                instance_id=instance_id, family='er_control', condition=f'er_control({spec.condition})', seed=spec.seed,
                error='density-matched graph has no edges',
            )
        )
    a = [r.delta_adv for r in sbm_records if r.delta_adv is not None]
    b = [r.delta_adv for r in er_records if r.delta_adv is not None]
    try:
        test = t_test_two_sample(a, b)
    except CutSelectorError as exc:
        logger.warning('density control test undefined: %s', exc)
        test = None
    return sbm_records, er_records, test


def inter_vs_intra(records: Sequence[ExperimentRecord]) -> TTestResult:
    """Welch test of Delta_adv for inter- against intra-community TW2S selections."""
    inter = [r.delta_adv for r in records if r.edge_type == 'inter' and r.delta_adv is not None]
    intra = [r.delta_adv for r in records if r.edge_type == 'intra' and r.delta_adv is not None]
    return t_test_two_sample(inter, intra)
