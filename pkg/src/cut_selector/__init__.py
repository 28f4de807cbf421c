__version__ = '0.2.0'

from .circuit import Circuit, Gate, GateKind, Observable, parse_circuit, parse_observable
from .models import CutSelection, ExperimentRecord, NoiseModel, RunConfig
from .routing import CouplingMap, heavy_hex, route
from .selection import random_cut, select_cut, select_stage1_only
from .simulation import qpd_estimate
from .storage import CsvResultsStore, ResultsStoreFactory, SQLiteResultsStore

__all__ = [
    'Circuit',
    'Gate',
    'GateKind',
    'Observable',
    'parse_circuit',
    'parse_observable',
    'CutSelection',
    'ExperimentRecord',
    'NoiseModel',
    'RunConfig',
    'CouplingMap',
    'heavy_hex',
    'route',
    'random_cut',
    'select_cut',
    'select_stage1_only',
    'qpd_estimate',
    'CsvResultsStore',
    'ResultsStoreFactory',
    'SQLiteResultsStore',
]
