"""
Configuration package.
Defaults live in settings.yaml; environment variables override them.
"""

from .settings import load_settings, circuit_cap, SETTINGS_PATH

__all__ = ['load_settings', 'circuit_cap', 'SETTINGS_PATH']
