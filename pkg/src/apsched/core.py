"""Deterministic cost model for a fixed sequence of jobs on one server.

Waiting/idling follow the Lindley-style recursion
    W_1 = I_1 = 0,
    W_i = max(0, W_{i-1} + p_{i-1} - S_{i-1}),
    I_i = max(0, -(W_{i-1} + p_{i-1} - S_{i-1})),
and the cost of a schedule S against a realization p is
    wait_cost * sum(W) + idle_cost * sum(I).
The cost is convex piecewise-linear in S; `schedule_subgradient` returns an
exact subdifferential element via a backward sweep.  The last job's duration
and allowance never enter the cost (no overtime term); both are carried in
the types for symmetry.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels


def _as_vector(values, name):
    arr = np.ascontiguousarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return arr


@dataclass(frozen=True)
class Schedule:
    """Non-negative time allowances, one per job in fixed order (n >= 2)."""

    allowances: np.ndarray

    def __post_init__(self):
        arr = _as_vector(self.allowances, "allowances")
        if arr.size < 2:
            raise ValueError("a schedule needs at least 2 jobs")
        if np.any(arr < 0):
            raise ValueError("allowances must be non-negative")
        object.__setattr__(self, "allowances", arr)

    def __len__(self):
        return self.allowances.size


@dataclass(frozen=True)
class DurationVector:
    """One realization of the n job durations (all non-negative)."""

    durations: np.ndarray

    def __post_init__(self):
        arr = _as_vector(self.durations, "durations")
        if arr.size < 2:
            raise ValueError("a realization needs at least 2 jobs")
        if np.any(arr < 0):
            raise ValueError("durations must be non-negative")
        object.__setattr__(self, "durations", arr)

    def __len__(self):
        return self.durations.size


@dataclass(frozen=True)
class CostParams:
    """Per-time-unit waiting and idling costs; at least one must be positive."""

    wait_cost: float
    idle_cost: float

    def __post_init__(self):
        if self.wait_cost < 0 or self.idle_cost < 0:
            raise ValueError("costs must be non-negative")
        if self.wait_cost + self.idle_cost <= 0:
            raise ValueError("at least one cost must be positive")

    @property
    def quantile(self):
        """Critical ratio wait/(wait+idle) - the newsvendor quantile."""
        return self.wait_cost / (self.wait_cost + self.idle_cost)


@dataclass(frozen=True)
class CostBreakdown:
    waits: np.ndarray
    idles: np.ndarray
    total: float
    schedule: Schedule = field(repr=False)
    realization: DurationVector = field(repr=False)


def _check_lengths(schedule, realization):
    if len(schedule) != len(realization):
        raise ValueError(
            f"schedule has {len(schedule)} jobs but realization has {len(realization)}"
        )


def evaluate_schedule(schedule, realization, costs):
    """Run the recursion for one schedule/realization pair.

    Returns a CostBreakdown whose waits/idles satisfy the recursion identity
    and complementarity (waits[i] * idles[i] == 0).
    """
    _check_lengths(schedule, realization)
    waits, idles = _kernels.batch_waits_idles(
        schedule.allowances, realization.durations[None, :]
    )
    waits = waits[0]
    idles = idles[0]
    total = costs.wait_cost * waits.sum() + costs.idle_cost * idles.sum()
    return CostBreakdown(
        waits=waits,
        idles=idles,
        total=float(total),
        schedule=schedule,
        realization=realization,
    )


def schedule_subgradient(schedule, realization, costs):
    """Subdifferential element of the total cost w.r.t. the allowances.

    Backward sweep through the max operations; when a recursion argument is
    exactly 0 the zero branch is selected, making the result deterministic.
    The component for the last job is always 0.
    """
    _check_lengths(schedule, realization)
    _, grads = _kernels.batch_cost_grads(
        schedule.allowances,
        realization.durations[None, :],
        costs.wait_cost,
        costs.idle_cost,
    )
    return grads[0]


def scenario_costs(allowances, duration_matrix, costs):
    """Vector of recursion costs of one allowance vector over many scenarios."""
    allowances = np.ascontiguousarray(allowances, dtype=float)
    duration_matrix = np.ascontiguousarray(duration_matrix, dtype=float)
    return _kernels.batch_costs(
        allowances, duration_matrix, costs.wait_cost, costs.idle_cost
    )


def mean_cost_and_subgradient(allowances, duration_matrix, costs):
    """Average cost over scenarios and an averaged subgradient, in one pass."""
    allowances = np.ascontiguousarray(allowances, dtype=float)
    duration_matrix = np.ascontiguousarray(duration_matrix, dtype=float)
    totals, grads = _kernels.batch_cost_grads(
        allowances, duration_matrix, costs.wait_cost, costs.idle_cost
    )
    return float(totals.mean()), grads.mean(axis=0)
