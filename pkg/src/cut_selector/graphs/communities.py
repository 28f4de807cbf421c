import logging
from collections import Counter

import networkx as nx
import numpy as np

from ..config import Config
from ..exceptions import ParameterError
from .ugraph import UGraph

logger = logging.getLogger(__name__)

Partition = dict[int, int]


def mixing_ratio(p_in: float, p_out: float) -> float:
    """mu = p_out / p_in; p_in == 0 raises ZeroDivisionError."""
    return p_out / p_in


def _relabel(labels: list[int]) -> Partition:
    """Community ids renumbered 0, 1, ... in order of first appearance by node id."""
    ids: dict[int, int] = {}
    return {u: ids.setdefault(lab, len(ids)) for u, lab in enumerate(labels)}


def label_propagation_communities(
    g: UGraph, seed: int = 0, max_sweeps: int = Config.LABEL_PROPAGATION_MAX_SWEEPS
) -> Partition:
    """Asynchronous label propagation.

    Each sweep visits the nodes in an order shuffled by the seeded RNG and
    moves every node to a most frequent neighbour label. A node keeps its
    label whenever that label is among the most frequent ones; other ties are
    broken by the RNG. Once a fixpoint is reached, refinement sweeps move a
    tied node to the largest of its tied communities when that one is strictly
    larger than its own, so short paths between dense groups join a group
    instead of forming a community of their own. Each phase stops at a
    fixpoint or after ``max_sweeps`` sweeps.
    """
    if g.n == 0:
        raise ParameterError('g', 'graph has no nodes')

    rng = np.random.default_rng(seed)
    labels = list(range(g.n))
    sizes = Counter(labels)

    def choose(u: int, refine: bool) -> int | None:
        counts = Counter(labels[w] for w in g.neighbors(u))
        top = max(counts.values())
        best = sorted(lab for lab, c in counts.items() if c == top)
        if refine:
            largest = max(sizes[lab] for lab in best)
            if labels[u] in best and sizes[labels[u]] >= largest:
                return None
            best = [lab for lab in best if sizes[lab] == largest]
        elif labels[u] in best:
            return None
        return best[int(rng.integers(len(best)))]

    for phase in ('propagation', 'refinement'):
        for sweep in range(max_sweeps):
            changed = False
            for u in rng.permutation(g.n).tolist():
                if not g.neighbors(u):
                    continue
                new = choose(u, refine=phase == 'refinement')
                if new is None:
                    continue
                sizes[labels[u]] -= 1
                sizes[new] += 1
                labels[u] = new
                changed = True
            if not changed:
                logger.debug('label %s converged after %d sweeps', phase, sweep + 1)
                break
        else:
            logger.warning('label %s did not converge within %d sweeps', phase, max_sweeps)

    return _relabel(labels)


def _check_partition(g: UGraph, partition: Partition) -> None:
    missing = [u for u in g.nodes() if u not in partition]
    if missing:
        raise ParameterError('partition', f'nodes {missing[:5]} have no community')


def modularity(g: UGraph, partition: Partition) -> float:
    """Newman modularity Q = sum_c (e_cc / m - (d_c / 2m)^2); 0 for an edgeless graph."""
    _check_partition(g, partition)
    if g.num_edges == 0:
        return 0.0
    groups: dict[int, set[int]] = {}
    for u in g.nodes():
        groups.setdefault(partition[u], set()).add(u)
    return float(nx.community.modularity(g.to_networkx(), list(groups.values())))


def is_inter_edge(partition: Partition, edge: tuple[int, int]) -> bool:
    u, v = edge
    return partition[u] != partition[v]


def inter_community_fraction(g: UGraph, partition: Partition) -> float:
    """Fraction of edges whose endpoints sit in different communities."""
    _check_partition(g, partition)
    if g.num_edges == 0:
        raise ParameterError('g', 'inter-community fraction of an edgeless graph is undefined')
    crossing = sum(1 for e in g.edges if is_inter_edge(partition, e))
    return crossing / g.num_edges
