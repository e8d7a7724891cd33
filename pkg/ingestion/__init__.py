"""
Ingestion package.
Loads problem matrices and vectors from CSV, JSON or .npy files.
"""

from .matrix_loader import load_matrix, load_vector, parse_complex, save_matrix_csv

__all__ = ['load_matrix', 'load_vector', 'parse_complex', 'save_matrix_csv']
