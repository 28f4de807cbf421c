"""
Graph components for the cut selector: representation, family generators
and community diagnostics.
"""
from .communities import (
    inter_community_fraction,
    is_inter_edge,
    label_propagation_communities,
    mixing_ratio,
    modularity,
)
from .generators import (
    barbell,
    density_matched_er,
    erdos_renyi,
    generate,
    grid,
    j1j2_edges,
    j1j2_ring,
    sbm,
    sbm_partition,
    watts_strogatz,
)
from .ugraph import UGraph, edge_key, read_graph, write_graph

__all__ = [
    'UGraph',
    'edge_key',
    'read_graph',
    'write_graph',
    'barbell',
    'density_matched_er',
    'erdos_renyi',
    'generate',
    'grid',
    'j1j2_edges',
    'j1j2_ring',
    'sbm',
    'sbm_partition',
    'watts_strogatz',
    'inter_community_fraction',
    'is_inter_edge',
    'label_propagation_communities',
    'mixing_ratio',
    'modularity',
]
