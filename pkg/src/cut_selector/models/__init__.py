from .base import (
    BarbellSpec,
    BenchConfig,
    BenchFamily,
    BreakevenConfig,
    BreakevenParams,
    CutSelection,
    Edge,
    ErdosRenyiSpec,
    EstimateResult,
    ExperimentRecord,
    FailureSweepConfig,
    GraphFamilySpec,
    GridSpec,
    J1J2RingSpec,
    NoiseModel,
    RunConfig,
    SbmSpec,
    SelectionParams,
    ShortlistEntry,
    Strategy,
    TfimSpec,
    WattsStrogatzSpec,
    as_parameter_error,
)

__all__ = [
    'BarbellSpec',
    'BenchConfig',
    'BenchFamily',
    'BreakevenConfig',
    'BreakevenParams',
    'CutSelection',
    'Edge',
    'ErdosRenyiSpec',
    'EstimateResult',
    'ExperimentRecord',
    'FailureSweepConfig',
    'GraphFamilySpec',
    'GridSpec',
    'J1J2RingSpec',
    'NoiseModel',
    'RunConfig',
    'SbmSpec',
    'SelectionParams',
    'ShortlistEntry',
    'Strategy',
    'TfimSpec',
    'WattsStrogatzSpec',
    'as_parameter_error',
]
