"""Data-driven single-server appointment scheduling toolkit.

Optimal time allowances for a fixed job sequence with uncertain durations:
classic solvers (sample-average approximation, moment-based distributionally
robust optimization) and feature-based schedulers (separated vs. integrated
estimation-and-optimization with a task-based loss).
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .core import (
    CostBreakdown,
    CostParams,
    DurationVector,
    Schedule,
    evaluate_schedule,
    schedule_subgradient,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "CostBreakdown",
    "CostParams",
    "DurationVector",
    "Schedule",
    "evaluate_schedule",
    "schedule_subgradient",
]
