import math
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

from ..models.base import ExperimentRecord

# table -> [(column, sqlite type)]; CSV files use the same columns in order
SCHEMAS: dict[str, list[tuple[str, str]]] = {
    'experiments': [
        ('instance_id', 'TEXT'),
        ('family', 'TEXT'),
        ('condition', 'TEXT'),
        ('seed', 'INTEGER'),
        ('n_qubits', 'INTEGER'),
        ('n_two_qubit', 'INTEGER'),
        ('ecr_uncut', 'REAL'),
        ('ecr_tw2s_cut', 'REAL'),
        ('ecr_random_cut', 'REAL'),
        ('delta_tw2s', 'REAL'),
        ('delta_random', 'TEXT'),
        ('delta_random_mean', 'REAL'),
        ('delta_adv', 'REAL'),
        ('win', 'INTEGER'),
        ('tw2s_edge', 'TEXT'),
        ('tw2s_gate_index', 'INTEGER'),
        ('edge_type', 'TEXT'),
        ('stage1_edge', 'TEXT'),
        ('stage1_edge_type', 'TEXT'),
        ('delta_stage1', 'REAL'),
        ('r_inter', 'REAL'),
        ('modularity', 'REAL'),
        ('oracle_max', 'REAL'),
        ('oracle_eff_tw2s', 'REAL'),
        ('oracle_eff_stage1', 'REAL'),
        ('oracle_eff_random', 'REAL'),
        ('error', 'TEXT'),
    ],
    'summary': [
        ('condition', 'TEXT'),
        ('n', 'INTEGER'),
        ('mean_delta_adv', 'REAL'),
        ('win_rate', 'REAL'),
        ('t', 'REAL'),
        ('p', 'REAL'),
    ],
    'breakeven': [
        ('p', 'REAL'),
        ('n_ecr', 'REAL'),
        ('delta_n', 'REAL'),
        ('sigma_h', 'REAL'),
        ('h_ideal', 'REAL'),
        ('gamma', 'REAL'),
        ('m_star', 'REAL'),
    ],
    'winrate': [
        ('n', 'INTEGER'),
        ('trotter_steps', 'INTEGER'),
        ('shots', 'INTEGER'),
        ('strategy', 'TEXT'),
        ('delta_ecr', 'REAL'),
        ('h_ideal', 'REAL'),
        ('win_rate', 'REAL'),
        ('mean_err_base', 'REAL'),
        ('mean_err_qpd', 'REAL'),
        ('error', 'TEXT'),
    ],
    'crossover': [
        ('p_ecr', 'REAL'),
        ('p_meas', 'REAL'),
        ('bias_base', 'REAL'),
        ('bias_qpd', 'REAL'),
        ('qpd_advantage', 'REAL'),
    ],
}


def columns(table: str) -> list[str]:
    return [name for name, _ in SCHEMAS[table]]


def experiment_row(record: ExperimentRecord) -> dict[str, Any]:
    return record.model_dump()


def format_cell(value: Any) -> str:
    """CSV text of a value: empty for missing, 'inf' for an infinite M*, u-v for edges."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return '1' if value else '0'
    if isinstance(value, float):
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return repr(value)
    if isinstance(value, tuple):
        return '-'.join(str(v) for v in value)
    if isinstance(value, list):
        return ';'.join(format_cell(v) for v in value)
    return str(value)


class ResultsStore(ABC):
    """Abstract sink for experiment result tables."""

    @abstractmethod
    def init_store(self) -> None:
        """Create the output location and tables."""
        pass

    @abstractmethod
    def write_rows(self, table: str, rows: Iterable[Mapping[str, Any]]) -> str:
        """Replace a table's contents; returns where it was written."""
        pass

    def write_experiments(self, records: Sequence[ExperimentRecord]) -> str:
        return self.write_rows('experiments', [experiment_row(r) for r in records])

    def write_summary(self, rows: Iterable[Mapping[str, Any]]) -> str:
        return self.write_rows('summary', rows)

    def write_breakeven(self, rows: Iterable[Mapping[str, Any]]) -> str:
        return self.write_rows('breakeven', rows)

    def write_winrate(self, rows: Iterable[Mapping[str, Any]]) -> str:
        return self.write_rows('winrate', rows)

    def write_crossover(self, rows: Iterable[Mapping[str, Any]]) -> str:
        return self.write_rows('crossover', rows)


class ResultsStoreFactory:
    """Factory class for creating result stores."""

    @staticmethod
    def create_store(store_type: str, **kwargs) -> ResultsStore:
        """Create a results store based on type."""
        if store_type.lower() == 'csv':
            from .csv_storage import CsvResultsStore
            return CsvResultsStore(**kwargs)
        elif store_type.lower() == 'sqlite':
            from .sqlite_storage import SQLiteResultsStore
            return SQLiteResultsStore(**kwargs)
        else:
            raise ValueError(f'Unsupported storage type: {store_type}')


def default_store_kwargs(store_type: str, results_dir: str | Path, sqlite_path: str | Path | None = None) -> dict:
    if store_type.lower() == 'sqlite':
        return {'db_path': sqlite_path or Path(results_dir) / 'experiments.db'}
    return {'results_dir': results_dir}
