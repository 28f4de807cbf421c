"""
Circuit components for the cut selector: IR, builders, text format,
observables and interaction-graph extraction.
"""
from .builders import build_tfim, circuit_from_graph, tfim_edges, tfim_hamiltonian
from .interaction import InteractionGraph, extract, write_interaction
from .ir import TWO_QUBIT_KINDS, Circuit, Gate, GateKind, layer_index, layers, remove_gate, replace_gate
from .observable import Observable, emit_observable, parse_observable
from .text_format import CircuitParser, emit_circuit, parse_circuit

__all__ = [
    'TWO_QUBIT_KINDS',
    'Circuit',
    'Gate',
    'GateKind',
    'layer_index',
    'layers',
    'remove_gate',
    'replace_gate',
    'build_tfim',
    'circuit_from_graph',
    'tfim_edges',
    'tfim_hamiltonian',
    'CircuitParser',
    'emit_circuit',
    'parse_circuit',
    'InteractionGraph',
    'extract',
    'write_interaction',
    'Observable',
    'emit_observable',
    'parse_observable',
]
