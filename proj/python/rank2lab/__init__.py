"""Exact and high-precision verification of the rank-2 integrable systems.

Each function returns the report dictionary that the command-line tool
writes; ``report["passed"]`` carries the verdict.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from ._core import Rank2LabError, coefficient_names, systems
from ._core import run as _run

__all__ = [
    "Rank2LabError",
    "build_rep",
    "check_identities",
    "coefficient_names",
    "error_kind",
    "solve",
    "systems",
    "verify",
]


def _call(command: str, **options: Any) -> dict:
    text, _ = _run(command, json.dumps(options))
    return json.loads(text)


def error_kind(err: Rank2LabError) -> str:
    """Name of the error, e.g. ``UnknownCoefficient``."""
    return str(err).split(":", 1)[0]


def build_rep(algebra: str, fundamental: int) -> dict:
    return _call("build-rep", algebra=algebra, fundamental=fundamental)


def check_identities(algebra: Optional[str] = None, trials: int = 100, seed: int = 1) -> dict:
    return _call("check-identities", algebra=algebra, trials=trials, seed=seed)


def solve(system: Optional[str] = None, coeffs: Any = None, mode: str = "exact", seed: int = 1,
          precision: int = 60, step: float = 1e-3, tolerance: Optional[str] = None) -> dict:
    return _call("solve", system=system, coeffs=coeffs, mode=mode, seed=seed, precision=precision,
                 step=step, tolerance=tolerance)


def verify(system: Optional[str] = None, coeffs: Any = None, mode: str = "exact", points: int = 20,
           seed: int = 1, sets: Optional[int] = None, precision: int = 60, step: float = 1e-3,
           tolerance: Optional[str] = None) -> dict:
    return _call("verify", system=system, coeffs=coeffs, mode=mode, points=points, seed=seed, sets=sets,
                 precision=precision, step=step, tolerance=tolerance)
