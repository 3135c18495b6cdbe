"""Centralized numerical tolerances.

All library functions that take a ``tol`` argument fall back to the values
held here.  The class-equivalence tolerance can be overridden at runtime,
which is what the CLI does when ``WEYLFORGE_TOL`` is set.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_VAR = "WEYLFORGE_TOL"
CLASS_TOL_RANGE = (1e-14, 1e-6)


@dataclass(frozen=True)
class Tolerances:
    unitary: float = 1e-12
    recon: float = 1e-12
    cls: float = 1e-9
    # below this a chamber coordinate is treated as exactly zero
    snap: float = 1e-12


_current = Tolerances()


def get() -> Tolerances:
    return _current


def set_class_tolerance(value: float) -> Tolerances:
    global _current
    lo, hi = CLASS_TOL_RANGE
    if not (lo <= value <= hi):
        raise ValueError(f"class tolerance {value!r} outside [{lo:g}, {hi:g}]")
    _current = replace(_current, cls=float(value))
    return _current


def reset(to: Tolerances | None = None) -> None:
    global _current
    _current = Tolerances() if to is None else to


def class_tolerance_from_env(environ=None) -> float | None:
    """Parse ``WEYLFORGE_TOL``; returns None when unset, raises ValueError when invalid."""
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_VAR)
    if raw is None or raw.strip() == "":
        return None
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR}={raw!r} is not a number") from None
    lo, hi = CLASS_TOL_RANGE
    if not (lo <= value <= hi):
        raise ValueError(f"{ENV_VAR}={raw!r} outside [{lo:g}, {hi:g}]")
    return value
