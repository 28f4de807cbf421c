"""
Analysis components: breakeven model, t tests, enrichment and the benchmark
and noisy-simulation sweeps.
"""
from .breakeven import bias, breakeven_grid, m_star, mse_model, variance_factor
from .enrichment import enrichment, enrichment_by_condition
from .experiments import (
    bench_circuit,
    bench_instance,
    bench_tfim,
    community_partition,
    density_control,
    inter_vs_intra,
    mu_sweep,
    run_bench,
    summarize,
)
from .failure import (
    failure_cell_rows,
    failure_sweep,
    j1j2_error_model,
    p_meas_crossover,
    tfim_crossover,
)
from .stats import TTestResult, student_t_sf2, t_test_one_sample, t_test_two_sample

__all__ = [
    'bias',
    'breakeven_grid',
    'm_star',
    'mse_model',
    'variance_factor',
    'enrichment',
    'enrichment_by_condition',
    'bench_circuit',
    'bench_instance',
    'bench_tfim',
    'community_partition',
    'density_control',
    'inter_vs_intra',
    'mu_sweep',
    'run_bench',
    'summarize',
    'failure_cell_rows',
    'failure_sweep',
    'j1j2_error_model',
    'p_meas_crossover',
    'tfim_crossover',
    'TTestResult',
    'student_t_sf2',
    't_test_one_sample',
    't_test_two_sample',
]
