import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, ValidationError, computed_field, model_validator

from ..exceptions import ParameterError

Edge = tuple[int, int]
SEED_LIMIT = 2**64


def as_parameter_error(exc: ValidationError) -> ParameterError:
    """The ParameterError behind a pydantic ValidationError, or one built from its first entry."""
    first = exc.errors()[0]
    original = first.get('ctx', {}).get('error')
    if isinstance(original, ParameterError):
        return original
    field = '.'.join(str(p) for p in first['loc']) or 'value'
    return ParameterError(field, first['msg'])


def _check_probability(field: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ParameterError(field, f'{value} is not a probability in [0, 1]')


def _check_at_least(field: str, value: int, minimum: int) -> None:
    if value < minimum:
        raise ParameterError(field, f'{value} < {minimum}')


class _FamilySpec(BaseModel):
    seed: int = 0

    @model_validator(mode='after')
    def _validate(self):
        self.check()
        return self

    def check(self) -> None:
        if not 0 <= self.seed < SEED_LIMIT:
            raise ParameterError('seed', f'{self.seed} is not a 64-bit unsigned seed')

    @property
    def condition(self) -> str:
        """Family and parameters without the seed, e.g. 'barbell(k=3,m=0)'."""
        params = self.model_dump(exclude={'family', 'seed'})
        inner = ','.join(f'{k}={v}' for k, v in params.items())
        return f'{self.family}({inner})'


class GridSpec(_FamilySpec):
    family: Literal['grid'] = 'grid'
    rows: int
    cols: int

    def check(self) -> None:
        super().check()
        _check_at_least('rows', self.rows, 1)
        _check_at_least('cols', self.cols, 1)


class WattsStrogatzSpec(_FamilySpec):
    family: Literal['watts_strogatz'] = 'watts_strogatz'
    n: int
    k: int
    p: float

    def check(self) -> None:
        super().check()
        _check_at_least('n', self.n, 1)
        _check_at_least('k', self.k, 1)
        _check_probability('p', self.p)
        if self.k % 2:
            raise ParameterError('k', f'{self.k} must be even')
        if self.k >= self.n:
            raise ParameterError('k', f'{self.k} must be smaller than n={self.n}')


class BarbellSpec(_FamilySpec):
    family: Literal['barbell'] = 'barbell'
    k: int
    m: int = 0

    def check(self) -> None:
        super().check()
        _check_at_least('k', self.k, 1)
        _check_at_least('m', self.m, 0)


class SbmSpec(_FamilySpec):
    family: Literal['sbm'] = 'sbm'
    n_per: int
    m_communities: int = 2
    p_in: float
    p_out: float

    def check(self) -> None:
        super().check()
        _check_at_least('n_per', self.n_per, 1)
        _check_at_least('m_communities', self.m_communities, 1)
        _check_probability('p_in', self.p_in)
        _check_probability('p_out', self.p_out)


class ErdosRenyiSpec(_FamilySpec):
    family: Literal['erdos_renyi'] = 'erdos_renyi'
    n: int
    p: float

    def check(self) -> None:
        super().check()
        _check_at_least('n', self.n, 1)
        _check_probability('p', self.p)


class J1J2RingSpec(_FamilySpec):
    family: Literal['j1j2_ring'] = 'j1j2_ring'
    n: int

    def check(self) -> None:
        super().check()
        _check_at_least('n', self.n, 5)


GraphFamilySpec = Annotated[
    Union[GridSpec, WattsStrogatzSpec, BarbellSpec, SbmSpec, ErdosRenyiSpec, J1J2RingSpec],
    Field(discriminator='family'),
]


class TfimSpec(BaseModel):
    n: int
    trotter_steps: int = 1
    j1: float = 1.0
    j2: float = 0.0
    h: float = 0.7
    rzz_angle: float = math.pi / 2
    dt_x: float = 0.1
    topology: Literal['chain', 'ring', 'j1j2_ring'] = 'chain'

    @model_validator(mode='after')
    def _validate(self):
        _check_at_least('n', self.n, 2)
        _check_at_least('trotter_steps', self.trotter_steps, 1)
        if self.topology == 'j1j2_ring' and self.n < 5:
            raise ParameterError('n', f'j1j2_ring needs n >= 5, got {self.n}')
        if self.topology == 'ring' and self.n < 3:
            raise ParameterError('n', f'ring needs n >= 3, got {self.n}')
        if self.j2 != 0.0 and self.j1 == 0.0:
            raise ParameterError('j1', 'J2 angles are scaled by J2/J1, so j1 must be nonzero')
        return self

    @classmethod
    def chain(cls, n: int, trotter_steps: int = 1) -> 'TfimSpec':
        return cls(n=n, trotter_steps=trotter_steps, topology='chain')

    @classmethod
    def ring(cls, n: int, trotter_steps: int = 1) -> 'TfimSpec':
        return cls(n=n, trotter_steps=trotter_steps, topology='ring')

    @classmethod
    def j1j2(cls, n: int, trotter_steps: int = 4) -> 'TfimSpec':
        return cls(n=n, trotter_steps=trotter_steps, j1=1.0, j2=0.9, h=1.5, topology='j1j2_ring')


class NoiseModel(BaseModel):
    p_ecr: float = Field(0.0, ge=0.0, le=1.0)
    p_meas: float = Field(0.0, ge=0.0, le=1.0)


Strategy = Literal['shared', 'per_subcircuit_1_5x']


class EstimateResult(BaseModel):
    value: float
    strategy: Literal['direct', 'shared', 'per_subcircuit_1_5x']
    shots: list[Optional[int]]  # per branch; None in exact mode
    per_branch: list[float] = []
    coefficients: list[float] = []
    seed: Optional[int] = None

    @property
    def exact(self) -> bool:
        return any(s is None for s in self.shots)


class ShortlistEntry(BaseModel):
    edge: Edge
    score1: float
    bc: float
    dp: float
    score2: float


class CutSelection(BaseModel):
    gate_index: int
    edge: Edge
    method: Literal['tw2s', 'stage1_only', 'stage1_oracle', 'random']
    shortlist: list[ShortlistEntry] = []
    tw_ub: Optional[int] = None
    seed: Optional[int] = None

    def to_output(self) -> dict:
        """Machine output of the select command."""
        return {
            'method': self.method,
            'edge': list(self.edge),
            'gate_index': self.gate_index,
            'tw_ub': self.tw_ub,
            'shortlist': [
                {'edge': list(e.edge), 'score1': e.score1, 'bc': e.bc, 'dp': e.dp, 'score2': e.score2}
                for e in self.shortlist
            ],
        }


class BreakevenParams(BaseModel):
    p: float
    n_ecr: float
    delta_n: float
    sigma_h: float
    h_ideal: float
    gamma: float = 3.0

    @model_validator(mode='after')
    def _validate(self):
        if not 0.0 < self.p < 1.0:
            raise ParameterError('p', f'{self.p} is not in (0, 1)')
        if self.n_ecr < 0:
            raise ParameterError('n_ecr', f'{self.n_ecr} < 0')
        if not 0.0 <= self.delta_n <= self.n_ecr:
            raise ParameterError('delta_n', f'{self.delta_n} is not in [0, n_ecr={self.n_ecr}]')
        if self.sigma_h <= 0:
            raise ParameterError('sigma_h', f'{self.sigma_h} <= 0')
        if self.h_ideal < 0:
            raise ParameterError('h_ideal', f'{self.h_ideal} < 0')
        if self.gamma < 1:
            raise ParameterError('gamma', f'{self.gamma} < 1')
        return self


class ExperimentRecord(BaseModel):
    instance_id: str
    family: str
    condition: str
    seed: int
    n_qubits: int = 0
    n_two_qubit: int = 0
    ecr_uncut: Optional[float] = None
    ecr_tw2s_cut: Optional[float] = None
    ecr_random_cut: Optional[float] = None
    delta_tw2s: Optional[float] = None
    delta_random: list[float] = []
    tw2s_edge: Optional[Edge] = None
    tw2s_gate_index: Optional[int] = None
    edge_type: Optional[Literal['inter', 'intra']] = None
    stage1_edge: Optional[Edge] = None
    stage1_edge_type: Optional[Literal['inter', 'intra']] = None
    delta_stage1: Optional[float] = None
    r_inter: Optional[float] = None
    modularity: Optional[float] = None
    oracle_max: Optional[float] = None
    oracle_eff_tw2s: Optional[float] = None
    oracle_eff_stage1: Optional[float] = None
    oracle_eff_random: Optional[float] = None
    error: Optional[str] = None

    @computed_field
    @property
    def delta_random_mean(self) -> Optional[float]:
        if not self.delta_random:
            return None
        return sum(self.delta_random) / len(self.delta_random)

    @computed_field
    @property
    def delta_adv(self) -> Optional[float]:
        if self.delta_tw2s is None or self.delta_random_mean is None:
            return None
        return self.delta_tw2s - self.delta_random_mean

    @computed_field
    @property
    def win(self) -> Optional[bool]:
        if self.delta_adv is None:
            return None
        return self.delta_adv > 0


# Run configuration


class SelectionParams(BaseModel):
    k: int = Field(3, ge=1)
    alpha: float = Field(1.0, ge=0.0)
    beta: float = Field(1.0, ge=0.0)
    alpha2: float = Field(1.0, ge=0.0)
    beta2: float = Field(0.3, ge=0.0)


class BenchFamily(BaseModel):
    spec: GraphFamilySpec
    seeds: list[int] = [0]


class BenchConfig(BaseModel):
    random_trials: int = Field(5, ge=1)
    random_seed: int = 0
    oracle: bool = False
    families: list[BenchFamily] = []


class BreakevenConfig(BaseModel):
    p: float = 0.005
    n_ecr: float = 200
    sigma_h: float = 7.0
    delta_n: list[float] = [1, 2, 5, 10, 15, 20, 30, 50]
    h_ideal: list[float] = [0.0, 0.5, 1.0, 2.0, 5.0, 8.0]
    gamma: float = 3.0


class FailureSweepConfig(BaseModel):
    n_values: list[int] = [4, 6]
    trotter_steps: list[int] = [1, 2, 3, 4]
    budgets: list[int] = [1_000, 10_000, 100_000]
    strategies: list[Strategy] = ['shared', 'per_subcircuit_1_5x']
    repetitions: int = Field(5, ge=1)
    topology: Literal['chain', 'ring'] = 'ring'
    noise: NoiseModel = NoiseModel(p_ecr=0.005, p_meas=0.01)
    seed: int = 0
    p_meas_sweep: list[float] = []


class RunConfig(BaseModel):
    routing_seeds: list[int] = [42, 123, 7]
    coupling: str = 'heavyhex127'
    results_dir: str = 'results'
    storage: Literal['csv', 'sqlite'] = 'csv'
    selection: SelectionParams = SelectionParams()
    bench: BenchConfig = BenchConfig()
    breakeven: BreakevenConfig = BreakevenConfig()
    failure_sweep: FailureSweepConfig = FailureSweepConfig()
