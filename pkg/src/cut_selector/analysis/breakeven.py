"""Bias/variance model of gate cutting and the breakeven shot count.

Under a depolarising model the bias of the baseline estimate grows as
|<H>_ideal| (1 - exp(-p N)) with the routed native gate count N; cutting
removes Delta N gates but multiplies the variance of a shared budget by
gamma^2.
"""

import logging
import math

from pydantic import ValidationError

from ..exceptions import ParameterError
from ..models.base import BreakevenParams, Strategy, as_parameter_error

logger = logging.getLogger(__name__)


def bias(bp: BreakevenParams, ecr_count: float) -> float:
    return bp.h_ideal * (1.0 - math.exp(-bp.p * ecr_count))


def m_star(bp: BreakevenParams) -> float:
    """Shared-budget shot count above which the cut circuit has the lower MSE.

    Infinite when there is nothing to gain (H_ideal = 0 or Delta N = 0).
    """
    gain = bias(bp, bp.n_ecr) ** 2 - bias(bp, bp.n_ecr - bp.delta_n) ** 2
    if gain <= 0:
        return math.inf
    return (bp.gamma**2 - 1.0) * bp.sigma_h**2 / gain


def variance_factor(bp: BreakevenParams, strategy: Strategy) -> float:
    """Multiplier of sigma_H^2 / M in the cut estimator's variance."""
    if strategy == 'shared':
        return bp.gamma**2
    if strategy == 'per_subcircuit_1_5x':
        return 1.0
    raise ParameterError('strategy', f'unknown strategy {strategy!r}')


def mse_model(bp: BreakevenParams, shots: float, strategy: Strategy = 'shared') -> tuple[float, float]:
    """(MSE of the baseline, MSE of the cut estimate) at M shots."""
    if shots < 1:
        raise ParameterError('shots', f'{shots} < 1')
    noise = bp.sigma_h**2 / shots
    mse_base = bias(bp, bp.n_ecr) ** 2 + noise
    mse_qpd = bias(bp, bp.n_ecr - bp.delta_n) ** 2 + variance_factor(bp, strategy) * noise
    return mse_base, mse_qpd


def breakeven_grid(
    p: float, n_ecr: float, sigma_h: float, delta_ns: list[float], h_ideals: list[float], gamma: float = 3.0
) -> list[dict]:
    """M* over a (Delta N, H_ideal) grid, one row per point."""
    rows = []
    for h in h_ideals:
        for dn in delta_ns:
            try:
                bp = BreakevenParams(p=p, n_ecr=n_ecr, delta_n=dn, sigma_h=sigma_h, h_ideal=h, gamma=gamma)
            except ValidationError as exc:
                raise as_parameter_error(exc) from exc
            rows.append({**bp.model_dump(), 'm_star': m_star(bp)})
    logger.info('evaluated breakeven grid of %d points', len(rows))
    return rows
