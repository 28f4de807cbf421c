import csv
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping

from .results_interface import ResultsStore, columns, format_cell

logger = logging.getLogger(__name__)


class CsvResultsStore(ResultsStore):
    """One CSV file per table under the results directory."""

    def __init__(self, results_dir: str | Path = 'results'):
        self.results_dir = Path(results_dir)
        self.init_store()

    def init_store(self) -> None:
        self.results_dir.mkdir(parents=True, exist_ok=True)

    def path_for(self, table: str) -> Path:
        return self.results_dir / f'{table}.csv'

    def write_rows(self, table: str, rows: Iterable[Mapping[str, Any]]) -> str:
        header = columns(table)
        path = self.path_for(table)
        count = 0
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_cell(row.get(name)) for name in header])
                count += 1
        logger.info('wrote %d %s rows to %s', count, table, path)
        return str(path)
