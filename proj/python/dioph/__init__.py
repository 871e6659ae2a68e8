"""Exact and ball-rigorous checks for rational approximation bounds.

The heavy lifting happens in the compiled ``_dioph`` extension. ``run`` mirrors
the command-line tool and returns the parsed JSON report.
"""

import json

from ._dioph import command_names, generate_convergents, height, mu, param_pipeline
from ._dioph import run as _run

__all__ = ["command_names", "generate_convergents", "height", "mu", "param_pipeline", "run"]


def run(command, toml_text="", precision=128, seed=1):
    """Run a CLI command on TOML text; returns (exit_code, report dict)."""
    code, report = _run(command, toml_text, precision, seed)
    return code, json.loads(report)
