"""Python front end for the syzlab C++ core."""

import json

from ._syzlab import (
    CapExceeded,
    ConfigError,
    betti_table,
    builtins,
    check_npr,
    hilbert_values,
    mplus_failures,
    version,
)
from . import _syzlab

__all__ = [
    "CapExceeded",
    "ConfigError",
    "betti_table",
    "builtins",
    "check_npr",
    "hilbert_values",
    "mplus_failures",
    "run_builtin",
    "run_config",
    "version",
]


def _decode(outcome):
    outcome = dict(outcome)
    outcome["report"] = json.loads(outcome["report"])
    return outcome


def run_config(toml, jobs=1, override_char_guard=False):
    """Run a TOML configuration; returns exit_code, report (dict) and summary lines."""
    return _decode(_syzlab.run_config(toml, jobs, override_char_guard))


def run_builtin(name, jobs=1):
    return _decode(_syzlab.run_builtin(name, jobs))
