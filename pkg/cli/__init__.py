"""
Command-line package: run manifests and the solve / sweep / hcurve /
bench-signs commands.
"""

from .manifest import RunManifest, ManifestError, COMMANDS
from .commands import (
    cmd_solve,
    cmd_sweep,
    cmd_hcurve,
    cmd_bench_signs,
    run_command,
    exit_code_for,
    sweep_summary,
    hcurve_frame,
    COMMAND_TABLE,
)

__all__ = [
    'RunManifest',
    'ManifestError',
    'COMMANDS',
    'cmd_solve',
    'cmd_sweep',
    'cmd_hcurve',
    'cmd_bench_signs',
    'run_command',
    'exit_code_for',
    'sweep_summary',
    'hcurve_frame',
    'COMMAND_TABLE',
]
