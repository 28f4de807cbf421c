import logging
import sqlite3
from pathlib import Path
from typing import Any, Iterable, Mapping

from .results_interface import SCHEMAS, ResultsStore, columns, format_cell

logger = logging.getLogger(__name__)


def _sql_value(value: Any) -> Any:
    if value is None or isinstance(value, (int, float, str)):
        return int(value) if isinstance(value, bool) else value
    return format_cell(value)


class SQLiteResultsStore(ResultsStore):
    """SQLite implementation of the results store: one table per result kind."""

    def __init__(self, db_path: str | Path = 'results/experiments.db'):
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self.init_store()

    def connect(self):
        """Create and return a database connection."""
        conn = sqlite3.connect(self.db_path)
        conn.row_factory = sqlite3.Row
        return conn

    def close_connection(self, conn):
        """Close a database connection."""
        if conn:
            conn.close()

    def init_store(self) -> None:
        conn = self.connect()
        cursor = conn.cursor()
        for table, schema in SCHEMAS.items():
            body = ',\n            '.join(f'{name} {kind}' for name, kind in schema)
            cursor.execute(f'''
            CREATE TABLE IF NOT EXISTS {table} (
            row_index INTEGER NOT NULL,
            {body}
            )
            ''')
        conn.commit()
        self.close_connection(conn)

    def write_rows(self, table: str, rows: Iterable[Mapping[str, Any]]) -> str:
        names = columns(table)
        placeholders = ', '.join('?' for _ in range(len(names) + 1))
        conn = self.connect()
        try:
            cursor = conn.cursor()
            cursor.execute(f'DELETE FROM {table}')
            count = 0
            for index, row in enumerate(rows):
                cursor.execute(
                    f"INSERT INTO {table} (row_index, {', '.join(names)}) VALUES ({placeholders})",
                    (index, *(_sql_value(row.get(name)) for name in names)),
                )
                count += 1
            conn.commit()
        finally:
            self.close_connection(conn)
        logger.info('wrote %d %s rows to %s', count, table, self.db_path)
        return f'{self.db_path}:{table}'

    def read_rows(self, table: str) -> list[dict]:
        """Rows of a table in insertion order."""
        conn = self.connect()
        try:
            cursor = conn.cursor()
            cursor.execute(f'SELECT * FROM {table} ORDER BY row_index')
            return [{k: row[k] for k in row.keys() if k != 'row_index'} for row in cursor.fetchall()]
        finally:
            self.close_connection(conn)
