"""
Common package for the qdfsim project.
Exception hierarchy and numerical tolerances shared by every module.
"""

from .errors import (
    QDFError,
    InputError,
    StateUndefinedError,
    ResourceError,
    DegenerateError,
    PrecisionError,
    DataFormatError,
)

__all__ = [
    'QDFError',
    'InputError',
    'StateUndefinedError',
    'ResourceError',
    'DegenerateError',
    'PrecisionError',
    'DataFormatError',
]
