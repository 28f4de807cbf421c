"""
Storage layer for the cut selector's result tables.
"""
from .csv_storage import CsvResultsStore
from .results_interface import SCHEMAS, ResultsStore, ResultsStoreFactory, columns, default_store_kwargs, format_cell
from .sqlite_storage import SQLiteResultsStore

__all__ = [
    'CsvResultsStore',
    'SCHEMAS',
    'ResultsStore',
    'ResultsStoreFactory',
    'columns',
    'default_store_kwargs',
    'format_cell',
    'SQLiteResultsStore',
]
