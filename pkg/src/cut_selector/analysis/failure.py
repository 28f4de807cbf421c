"""Noisy-simulation studies of when a single cut beats the uncut circuit.

The sweeps compare the error of a sampled baseline estimate of <H> against
the error of the QPD estimate for the same budget, both simulated on the
routed circuits under the parametric noise model.
"""

import logging
import statistics
from typing import Optional, Sequence

from ..circuit.builders import build_tfim, tfim_hamiltonian
from ..circuit.ir import Circuit
from ..circuit.observable import Observable
from ..config import Config
from ..exceptions import CutSelectorError
from ..models.base import BreakevenParams, CutSelection, FailureSweepConfig, NoiseModel, SelectionParams, TfimSpec
from ..routing.coupling import CouplingMap
from ..routing.evaluation import delta_ecr, ecr_count, stage1_oracle_cut
from ..selection.selector import random_cut, select_cut, select_stage1_only
from ..simulation.estimation import DirectEstimator, QpdEstimator, exact_expectation
from .breakeven import bias

logger = logging.getLogger(__name__)


def failure_cell_rows(
    spec: TfimSpec,
    cfg: FailureSweepConfig,
    cm: CouplingMap,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    selection: SelectionParams = SelectionParams(),
) -> list[dict]:
    """Win-rate rows for every (budget, strategy) of one TFIM configuration."""
    base_row = {'n': spec.n, 'trotter_steps': spec.trotter_steps}
    cells = [(m, s) for m in cfg.budgets for s in cfg.strategies]
    try:
        c = build_tfim(spec)
        obs = tfim_hamiltonian(spec)
        ideal = exact_expectation(c, obs)
        cut = stage1_oracle_cut(c, cm, routing_seeds, selection.k, selection.alpha, selection.beta)
        saved = delta_ecr(c, cut, cm, routing_seeds)
        direct = DirectEstimator(c, obs, cfg.noise, cm, routing_seeds[0])
        qpd = QpdEstimator(c, cut, obs, cfg.noise, cm, routing_seeds[0])
    except CutSelectorError as exc:
        logger.warning('failure sweep %s: %s', spec, exc)
        return [{**base_row, 'shots': m, 'strategy': s, 'error': str(exc)} for m, s in cells]

    rows = []
    for shots, strategy in cells:
        err_base, err_qpd = [], []
        for r in range(cfg.repetitions):
            seed = cfg.seed + r
            err_base.append(abs(direct.estimate(shots, seed).value - ideal))
            err_qpd.append(abs(qpd.estimate(shots, strategy, seed).value - ideal))
        wins = sum(1 for b, q in zip(err_base, err_qpd) if q < b)
        rows.append(
            {
                **base_row,
                'shots': shots,
                'strategy': strategy,
                'delta_ecr': saved,
                'h_ideal': abs(ideal),
                'win_rate': wins / cfg.repetitions,
                'mean_err_base': statistics.fmean(err_base),
                'mean_err_qpd': statistics.fmean(err_qpd),
                'error': None,
            }
        )
    logger.info('failure sweep n=%d T=%d: |H_ideal|=%.4f', spec.n, spec.trotter_steps, abs(ideal))
    return rows


def failure_sweep(
    cfg: FailureSweepConfig,
    cm: CouplingMap,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    selection: SelectionParams = SelectionParams(),
) -> list[dict]:
    rows = []
    for n in cfg.n_values:
        for steps in cfg.trotter_steps:
            spec = TfimSpec(n=n, trotter_steps=steps, topology=cfg.topology)
            rows.extend(failure_cell_rows(spec, cfg, cm, routing_seeds, selection))
    return rows


def p_meas_crossover(
    c: Circuit,
    cut: CutSelection,
    obs: Observable,
    p_ecr: float,
    p_meas_values: Sequence[float],
    cm: Optional[CouplingMap] = None,
    routing_seed: int = Config.ROUTING_SEEDS[0],
) -> list[dict]:
    """Exact noisy bias of the baseline and of the cut estimate as p_meas varies."""
    ideal = exact_expectation(c, obs)
    rows = []
    for p_meas in p_meas_values:
        noise = NoiseModel(p_ecr=p_ecr, p_meas=p_meas)
        base = DirectEstimator(c, obs, noise, cm, routing_seed).exact().value
        qpd = QpdEstimator(c, cut, obs, noise, cm, routing_seed).exact().value
        bias_base, bias_qpd = abs(base - ideal), abs(qpd - ideal)
        rows.append(
            {
                'p_ecr': p_ecr,
                'p_meas': p_meas,
                'bias_base': bias_base,
                'bias_qpd': bias_qpd,
                'qpd_advantage': bias_base - bias_qpd,
            }
        )
    return rows


def tfim_crossover(cfg: FailureSweepConfig, selection: SelectionParams = SelectionParams()) -> list[dict]:
    """p_meas sweep on the smallest even-step TFIM of the sweep, cut at its top Stage-1 edge, unrouted."""
    spec = TfimSpec(n=min(cfg.n_values), trotter_steps=2, topology=cfg.topology)
    c = build_tfim(spec)
    cut = select_stage1_only(c, selection.k, selection.alpha, selection.beta)
    return p_meas_crossover(c, cut, tfim_hamiltonian(spec), cfg.noise.p_ecr, cfg.p_meas_sweep)


def j1j2_error_model(
    n: int,
    trotter_steps: int,
    cm: CouplingMap,
    budgets: Sequence[int] = (500, 2_000, 10_000, 50_000),
    multipliers: Sequence[float] = (1.0, 9.0),
    p_ecr: float = 0.005,
    h_ideal: float = 5.0,
    sigma_h: float = 7.0,
    routing_seeds: Sequence[int] = tuple(Config.ROUTING_SEEDS),
    random_trials: int = Config.RANDOM_TRIALS,
    selection: SelectionParams = SelectionParams(),
) -> list[dict]:
    """Model MSE of the uncut, random-cut and TW2S-cut J1-J2 circuits from routed ECR counts.

    The multiplier scales sigma_H^2 / M for the cut estimates (1 for the
    per-subcircuit budget, 9 for the shared one); no state is simulated.
    """
    c = build_tfim(TfimSpec.j1j2(n, trotter_steps))
    uncut = ecr_count(c, cm, routing_seeds)
    tw2s = select_cut(c, selection.k, selection.alpha, selection.beta, selection.alpha2, selection.beta2)
    saved = {
        'tw2s': delta_ecr(c, tw2s, cm, routing_seeds, baseline=uncut),
        'random': statistics.fmean(
            delta_ecr(c, random_cut(c, t), cm, routing_seeds, baseline=uncut) for t in range(random_trials)
        ),
    }
    # only the bias part of the params is used here
    bp = BreakevenParams(p=p_ecr, n_ecr=uncut, delta_n=0, sigma_h=sigma_h, h_ideal=h_ideal)

    rows = []
    for shots in budgets:
        variance = sigma_h**2 / shots
        rows.append(
            {'n': n, 'trotter_steps': trotter_steps, 'shots': shots, 'condition': 'baseline', 'multiplier': 1.0,
             'ecr': uncut, 'bias': bias(bp, uncut), 'mse': bias(bp, uncut) ** 2 + variance}
        )
        for method, delta in saved.items():
            ecr = uncut - delta
            for mult in multipliers:
                rows.append(
                    {'n': n, 'trotter_steps': trotter_steps, 'shots': shots, 'condition': f'{method}_{mult:g}x',
                     'multiplier': mult, 'ecr': ecr, 'bias': bias(bp, ecr), 'mse': bias(bp, ecr) ** 2 + mult * variance}
                )
    return rows
