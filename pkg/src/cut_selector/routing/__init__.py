"""
Routing components for the cut selector: coupling maps, SWAP insertion and
routed-cost evaluation.
"""
from .coupling import CouplingMap, heavy_hex, heavy_hex_lattice, load_coupling, read_coupling, write_coupling
from .evaluation import (
    OracleTable,
    delta_ecr,
    ecr_count,
    ecr_counts,
    oracle_efficiency,
    oracle_eval,
    stage1_oracle_cut,
)
from .sabre import RoutedResult, compact_routed, fill_slot, initial_layout, native_cost, remap_observable, route

__all__ = [
    'CouplingMap',
    'heavy_hex',
    'heavy_hex_lattice',
    'load_coupling',
    'read_coupling',
    'write_coupling',
    'OracleTable',
    'delta_ecr',
    'ecr_count',
    'ecr_counts',
    'oracle_efficiency',
    'oracle_eval',
    'stage1_oracle_cut',
    'RoutedResult',
    'compact_routed',
    'fill_slot',
    'initial_layout',
    'native_cost',
    'remap_observable',
    'route',
]
