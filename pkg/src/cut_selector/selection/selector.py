import logging

import numpy as np

from ..circuit.interaction import InteractionGraph, extract
from ..circuit.ir import Circuit
from ..config import Config
from ..exceptions import NoTwoQubitGatesError
from ..models.base import CutSelection, ShortlistEntry
from .betweenness import degree_penalty, normalized_edge_betweenness
from .elimination import Edge, shortlist, stage1_scores

logger = logging.getLogger(__name__)


def _interaction(c: Circuit) -> InteractionGraph:
    ig = extract(c)
    if not ig.occurrences:
        raise NoTwoQubitGatesError(f"circuit {c.name or '<unnamed>'} has no two-qubit gates")
    return ig


def rank_candidates(
    c: Circuit, k: int, alpha: float, beta: float, alpha2: float, beta2: float
) -> tuple[InteractionGraph, list[ShortlistEntry], int]:
    """Shortlist entries carrying both stage scores, with the interaction graph and tw_ub."""
    ig = _interaction(c)
    s1 = stage1_scores(ig, alpha, beta)
    candidates = shortlist(s1, ig, k)

    # stage 2 uses the full interaction graph, not the shortlist subgraph
    bc = normalized_edge_betweenness(ig.base) if ig.base.n >= 2 else {}
    entries = []
    for e in candidates:
        dp = degree_penalty(ig.base, e)
        entries.append(
            ShortlistEntry(edge=e, score1=s1[e], bc=bc[e], dp=dp, score2=alpha2 * bc[e] - beta2 * dp)
        )
    return ig, entries, s1.trace.tw_ub


def select_cut(
    c: Circuit,
    k: int = Config.SHORTLIST_K,
    alpha: float = Config.ALPHA,
    beta: float = Config.BETA,
    alpha2: float = Config.ALPHA2,
    beta2: float = Config.BETA2,
) -> CutSelection:
    """Two-stage selection: fill-responsibility shortlist, then betweenness minus degree penalty."""
    ig, entries, tw_ub = rank_candidates(c, k, alpha, beta, alpha2, beta2)
    best = min(entries, key=lambda en: (-en.score2, en.edge))
    selection = CutSelection(
        gate_index=ig.first_occurrence(best.edge),
        edge=best.edge,
        method='tw2s',
        shortlist=entries,
        tw_ub=tw_ub,
    )
    logger.debug('tw2s picked %s at gate %d (tw_ub=%d)', best.edge, selection.gate_index, tw_ub)
    return selection


def select_stage1_only(
    c: Circuit,
    k: int = Config.SHORTLIST_K,
    alpha: float = Config.ALPHA,
    beta: float = Config.BETA,
) -> CutSelection:
    """Top-ranked Stage-1 edge without the betweenness stage."""
    ig, entries, tw_ub = rank_candidates(c, k, alpha, beta, Config.ALPHA2, Config.BETA2)
    top: Edge = entries[0].edge
    return CutSelection(
        gate_index=ig.first_occurrence(top),
        edge=top,
        method='stage1_only',
        shortlist=entries,
        tw_ub=tw_ub,
    )


def random_cut(c: Circuit, seed: int) -> CutSelection:
    """Uniformly random two-qubit gate position."""
    positions = c.two_qubit_positions()
    if not positions:
        raise NoTwoQubitGatesError('circuit has no two-qubit gates')
    rng = np.random.default_rng(seed)
    index = positions[int(rng.integers(len(positions)))]
    return CutSelection(gate_index=index, edge=c.gates[index].pair, method='random', seed=seed)
