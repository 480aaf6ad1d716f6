"""Python access to the zetalab core: special values and the command layer."""

import json

from ._zetalab import (
    AccuracyError,
    DomainError,
    Error,
    GridMismatchError,
    InsufficientDataError,
    PoleError,
    RegimeError,
    RegionError,
    TruncationError,
    hurwitz_zeta,
    periodic_hurwitz,
    riemann_zeta,
    run_cli,
)
from ._zetalab import run_command as _run_command

__all__ = [
    "AccuracyError",
    "DomainError",
    "Error",
    "GridMismatchError",
    "InsufficientDataError",
    "PoleError",
    "RegimeError",
    "RegionError",
    "TruncationError",
    "hurwitz_zeta",
    "periodic_hurwitz",
    "riemann_zeta",
    "run",
    "run_cli",
]


def run(command, config):
    """Run a CLI command on a config block (a dict) and return the JSON payload as a dict."""
    payload, _csv = _run_command(command, json.dumps(config))
    return json.loads(payload)
