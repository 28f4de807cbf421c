"""Seeded generators for the benchmark graph families.

The random families hand networkx an integer seed drawn from numpy's PCG64
stream (``numpy.random.default_rng``), so a spec and seed produce the same
graph on every platform. Grid, Barbell and J1J2Ring ignore the seed.
"""

import logging
from typing import Callable

import networkx as nx
import numpy as np

from ..exceptions import ParameterError
from ..models.base import ErdosRenyiSpec, GraphFamilySpec
from .ugraph import UGraph

logger = logging.getLogger(__name__)

_NX_SEED_LIMIT = 2**31 - 1


def _nx_seed(seed: int) -> int:
    return int(np.random.default_rng(seed).integers(0, _NX_SEED_LIMIT))


def grid(rows: int, cols: int) -> UGraph:
    """Node r * cols + c sits at row r, column c."""
    return UGraph.from_networkx(nx.grid_2d_graph(rows, cols))


def barbell(k: int, m: int = 0) -> UGraph:
    """Cliques 0..k-1 and k+m..2k+m-1 joined by the path k..k+m-1."""
    if k == 1:
        # two single-node "cliques" are the ends of a path
        return UGraph.from_networkx(nx.path_graph(m + 2))
    return UGraph.from_networkx(nx.barbell_graph(k, m))


def j1j2_ring(n: int) -> UGraph:
    """Chain plus closing edge {0, n-1} and next-nearest pairs {i, i+2}."""
    g = UGraph(n)
    for i in range(n - 1):
        g.add_edge(i, i + 1)
    g.add_edge(0, n - 1)
    for i in range(n - 2):
        g.add_edge(i, i + 2)
    return g


def j1j2_edges(n: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """(J1 edges, J2 edges) of the J1J2 ring, each sorted."""
    j1 = sorted([(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])
    j2 = [(i, i + 2) for i in range(n - 2)]
    return j1, j2


def erdos_renyi(n: int, p: float, seed: int) -> UGraph:
    return UGraph.from_networkx(nx.erdos_renyi_graph(n, p, seed=_nx_seed(seed)))


def sbm_partition(n_per: int, m_communities: int) -> dict[int, int]:
    """Planted partition of an SBM: node i belongs to block i // n_per."""
    return {u: u // n_per for u in range(n_per * m_communities)}


def sbm(n_per: int, m_communities: int, p_in: float, p_out: float, seed: int) -> UGraph:
    probs = [[p_in if a == b else p_out for b in range(m_communities)] for a in range(m_communities)]
    h = nx.stochastic_block_model([n_per] * m_communities, probs, seed=_nx_seed(seed))
    return UGraph.from_networkx(h)


def watts_strogatz(n: int, k: int, p: float, seed: int) -> UGraph:
    """Ring lattice with k/2 neighbours per side, each edge rewired with probability p."""
    return UGraph.from_networkx(nx.watts_strogatz_graph(n, k, p, seed=_nx_seed(seed)))


_GENERATORS: dict[str, Callable[..., UGraph]] = {
    'grid': lambda s: grid(s.rows, s.cols),
    'watts_strogatz': lambda s: watts_strogatz(s.n, s.k, s.p, s.seed),
    'barbell': lambda s: barbell(s.k, s.m),
    'sbm': lambda s: sbm(s.n_per, s.m_communities, s.p_in, s.p_out, s.seed),
    'erdos_renyi': lambda s: erdos_renyi(s.n, s.p, s.seed),
    'j1j2_ring': lambda s: j1j2_ring(s.n),
}


def generate(spec: GraphFamilySpec) -> UGraph:
    """Build the graph described by a family spec."""
    spec.check()
    try:
        build = _GENERATORS[spec.family]
    except KeyError:
        raise ParameterError('family', f'unknown family {spec.family!r}') from None
    g = build(spec)
    logger.debug('generated %s seed=%d: n=%d m=%d', spec.condition, spec.seed, g.n, g.num_edges)
    return g


def density_matched_er(g: UGraph, seed: int) -> UGraph:
    """Erdos-Renyi control with the same node count and expected density as g."""
    if g.n < 2:
        raise ParameterError('g', 'density needs at least two nodes')
    p = 2 * g.num_edges / (g.n * (g.n - 1))
    return generate(ErdosRenyiSpec(n=g.n, p=p, seed=seed))
