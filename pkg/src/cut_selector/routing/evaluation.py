import logging
import statistics
from dataclasses import dataclass
from typing import Optional, Sequence

from ..circuit.interaction import extract
from ..circuit.ir import Circuit, remove_gate
from ..config import Config
from ..exceptions import NoTwoQubitGatesError
from ..models.base import CutSelection
from ..selection.selector import rank_candidates
from .coupling import CouplingMap
from .sabre import route

logger = logging.getLogger(__name__)

Edge = tuple[int, int]


def ecr_counts(c: Circuit, cm: CouplingMap, seeds: Sequence[int]) -> list[int]:
    return [route(c, cm, seed).ecr_count for seed in seeds]


def ecr_count(c: Circuit, cm: CouplingMap, seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS)) -> float:
    """Mean routed native two-qubit count over the routing seeds."""
    if c.count_two_qubit() == 0:
        return 0.0
    return statistics.fmean(ecr_counts(c, cm, seeds))


def delta_ecr(
    c: Circuit,
    cut: CutSelection,
    cm: CouplingMap,
    seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    baseline: Optional[float] = None,
) -> float:
    """Mean ECR of c minus mean ECR of c with the cut gate deleted.

    ``baseline`` reuses an already computed uncut mean.
    """
    uncut = ecr_count(c, cm, seeds) if baseline is None else baseline
    reduced = remove_gate(c, cut.gate_index)
    cut_counts = ecr_counts(reduced, cm, seeds) if reduced.count_two_qubit() else [0] * len(seeds)
    delta = uncut - statistics.fmean(cut_counts)
    if delta < 0 and len(cut_counts) > 1:
        spread = statistics.stdev(cut_counts)
        if -delta > spread:
            logger.warning(
                'cutting gate %d of %s raised mean ECR by %.2f (seed spread %.2f)',
                cut.gate_index, c.name, -delta, spread,
            )
    return delta


@dataclass
class OracleTable:
    ecr_uncut: float
    deltas: dict[Edge, float]
    gate_index: dict[Edge, int]

    @property
    def best_edge(self) -> Edge:
        return min(self.deltas, key=lambda e: (-self.deltas[e], e))

    @property
    def max_delta(self) -> float:
        return self.deltas[self.best_edge]


def oracle_eval(c: Circuit, cm: CouplingMap, seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS)) -> OracleTable:
    """Delta ECR of cutting the first occurrence of every interaction edge."""
    ig = extract(c)
    if not ig.occurrences:
        raise NoTwoQubitGatesError('oracle evaluation needs a two-qubit gate')
    uncut = ecr_count(c, cm, seeds)
    deltas: dict[Edge, float] = {}
    firsts: dict[Edge, int] = {}
    for edge in ig.edges:
        index = ig.first_occurrence(edge)
        cut = CutSelection(gate_index=index, edge=edge, method='stage1_oracle')
        deltas[edge] = delta_ecr(c, cut, cm, seeds, baseline=uncut)
        firsts[edge] = index
    return OracleTable(uncut, deltas, firsts)


def oracle_efficiency(table: OracleTable, strategy_delta: float) -> Optional[float]:
    """Strategy delta over the best single-edge delta; None when the best is 0."""
    best = table.max_delta
    if best == 0:
        return None
    return strategy_delta / best


def stage1_oracle_cut(
    c: Circuit,
    cm: CouplingMap,
    seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    k: int = Config.SHORTLIST_K,
    alpha: float = Config.ALPHA,
    beta: float = Config.BETA,
) -> CutSelection:
    """The Stage-1 shortlist candidate whose removal saves the most routed ECR."""
    ig, entries, tw_ub = rank_candidates(c, k, alpha, beta, Config.ALPHA2, Config.BETA2)
    uncut = ecr_count(c, cm, seeds)
    best_edge, best_delta = None, float('-inf')
    for entry in entries:
        index = ig.first_occurrence(entry.edge)
        trial = CutSelection(gate_index=index, edge=entry.edge, method='stage1_oracle')
        delta = delta_ecr(c, trial, cm, seeds, baseline=uncut)
        if delta > best_delta:
            best_edge, best_delta = entry.edge, delta
    return CutSelection(
        gate_index=ig.first_occurrence(best_edge),
        edge=best_edge,
        method='stage1_oracle',
        shortlist=entries,
        tw_ub=tw_ub,
    )
