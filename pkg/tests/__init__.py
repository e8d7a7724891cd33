"""
Test package for qdfsim.
One module per package, plus CLI end-to-end tests.
"""

__all__ = []
