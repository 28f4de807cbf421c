import os
import tomllib
from pathlib import Path
from typing import Literal

import tomli_w
from pydantic import ValidationError

from .exceptions import ParameterError
from .models.base import RunConfig, as_parameter_error

StorageType = Literal['csv', 'sqlite']

# Native two-qubit cost of each gate kind, in ECR-equivalent gates.
NATIVE_COST: dict[str, int] = {'CX': 1, 'CZ': 1, 'RZZ': 2, 'SWAP': 3}


def _seed_list(raw: str) -> list[int]:
    return [int(s) for s in raw.replace(' ', '').split(',') if s]


class Config:
    """Configuration class for the cut selector."""

    # Output configuration
    RESULTS_DIR: str = os.getenv('CUT_SELECTOR_RESULTS_DIR', 'results')
    STORAGE_TYPE: StorageType = os.getenv('CUT_SELECTOR_STORAGE', 'csv').lower()
    SQLITE_PATH: str = os.getenv('CUT_SELECTOR_SQLITE_PATH', 'results/experiments.db')

    # Logging
    LOG_LEVEL: str = os.getenv('CUT_SELECTOR_LOG_LEVEL', 'INFO').upper()
    LOG_FILE: str | None = os.getenv('CUT_SELECTOR_LOG_FILE') or None

    # Routing
    ROUTING_SEEDS: list[int] = _seed_list(os.getenv('CUT_SELECTOR_ROUTING_SEEDS', '42,123,7'))
    LOOKAHEAD_WINDOW: int = int(os.getenv('CUT_SELECTOR_LOOKAHEAD_WINDOW', '20'))
    LOOKAHEAD_WEIGHT: float = float(os.getenv('CUT_SELECTOR_LOOKAHEAD_WEIGHT', '0.5'))
    DECAY_RATE: float = 0.001
    DECAY_RESET_INTERVAL: int = 5

    # Selection defaults
    SHORTLIST_K: int = 3
    ALPHA: float = 1.0
    BETA: float = 1.0
    ALPHA2: float = 1.0
    BETA2: float = 0.3

    # Benchmarks and simulation
    LABEL_PROPAGATION_MAX_SWEEPS: int = 100
    RANDOM_TRIALS: int = 5
    STATEVECTOR_MAX_QUBITS: int = 12
    DENSITY_MATRIX_MAX_QUBITS: int = 8

    @classmethod
    def validate_config(cls) -> None:
        """Validate configuration settings."""
        if cls.STORAGE_TYPE not in ['csv', 'sqlite']:
            raise ValueError(f"Invalid CUT_SELECTOR_STORAGE: {cls.STORAGE_TYPE}. Must be 'csv' or 'sqlite'")

        if not cls.ROUTING_SEEDS:
            raise ValueError('CUT_SELECTOR_ROUTING_SEEDS must name at least one seed')

        if cls.LOOKAHEAD_WINDOW < 0:
            raise ValueError(f'Invalid CUT_SELECTOR_LOOKAHEAD_WINDOW: {cls.LOOKAHEAD_WINDOW}')

        if cls.LOOKAHEAD_WEIGHT < 0:
            raise ValueError(f'Invalid CUT_SELECTOR_LOOKAHEAD_WEIGHT: {cls.LOOKAHEAD_WEIGHT}')


def load_run_config(path: str | Path) -> RunConfig:
    """Read a TOML run configuration and validate it."""
    with open(path, 'rb') as f:
        try:
            data = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ParameterError('config', f'{path}: {exc}') from exc
    return parse_run_config(data)


def parse_run_config(data: dict) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise as_parameter_error(exc) from exc


def dump_run_config(config: RunConfig) -> str:
    """Emit a run configuration as TOML; load(dump(c)) == c."""
    return tomli_w.dumps(config.model_dump(mode='json', exclude_none=True))
