"""Student t tests on the regularised incomplete beta function."""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import betainc

from ..exceptions import ParameterError


@dataclass(frozen=True)
class TTestResult:
    t: float
    p: float
    dof: float
    n: int


def student_t_sf2(t: float, dof: float) -> float:
    """Two-sided tail P(|T| > |t|) of Student's t with ``dof`` degrees of freedom."""
    if dof <= 0:
        raise ParameterError('dof', f'{dof} <= 0')
    if math.isinf(t):
        return 0.0
    x = dof / (dof + t * t)
    return float(betainc(dof / 2.0, 0.5, x))


def _sample(values: Sequence[float], field: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        raise ParameterError(field, f'needs at least 2 values, got {arr.size}')
    return arr


def t_test_one_sample(values: Sequence[float], mu: float = 0.0) -> TTestResult:
    arr = _sample(values, 'values')
    s = arr.std(ddof=1)
    if s == 0:
        raise ParameterError('values', 'sample variance is zero')
    n = arr.size
    t = (arr.mean() - mu) / (s / math.sqrt(n))
    return TTestResult(float(t), student_t_sf2(t, n - 1), n - 1, n)


def t_test_two_sample(a: Sequence[float], b: Sequence[float]) -> TTestResult:
    """Welch's unequal-variance test of mean(a) == mean(b)."""
    xa, xb = _sample(a, 'a'), _sample(b, 'b')
    va, vb = xa.var(ddof=1) / xa.size, xb.var(ddof=1) / xb.size
    if va + vb == 0:
        raise ParameterError('a', 'both samples have zero variance')
    t = (xa.mean() - xb.mean()) / math.sqrt(va + vb)
    dof = (va + vb) ** 2 / (va**2 / (xa.size - 1) + vb**2 / (xb.size - 1))
    return TTestResult(float(t), student_t_sf2(t, dof), float(dof), xa.size + xb.size)
