"""
Export package.
Versioned JSON reports and CSV tables.
"""

from .report_writer import SCHEMA_VERSION, write_json, write_csv, read_json, to_json_text

__all__ = ['SCHEMA_VERSION', 'write_json', 'write_csv', 'read_json', 'to_json_text']
