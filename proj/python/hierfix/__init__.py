"""Hierarchical fixed-point and variational inequality solver (C++ core)."""

from ._core import (
    ConvexSet,
    DivergenceError,
    Error,
    Experiment,
    OracleError,
    ParseError,
    ProjectionError,
    UsageError,
    ValidationError,
    compute_nu,
    registry,
    run_cli,
    validate_constants,
    validate_schedule,
    xu_recurrence,
)

__all__ = [
    "ConvexSet",
    "DivergenceError",
    "Error",
    "Experiment",
    "OracleError",
    "ParseError",
    "ProjectionError",
    "UsageError",
    "ValidationError",
    "compute_nu",
    "registry",
    "run_cli",
    "validate_constants",
    "validate_schedule",
    "xu_recurrence",
]
