"""NumPy fallback implementations of the recursion kernels.

Same contracts as the compiled backend (`_ck`): float64 C-contiguous
inputs, recursion over job index vectorized across scenarios/periods.
At an exact kink (recursion argument == 0.0) both branches are treated
as inactive, so the returned subgradients are deterministic.
"""

import numpy as np

BACKEND = "python"


def batch_waits_idles(allowances, durations):
    """Waiting/idling times of each scenario against one schedule.

    allowances: (n,), durations: (N, n).  Returns (waits, idles), both (N, n),
    with waits[:, 0] = idles[:, 0] = 0.
    """
    num, n = durations.shape
    waits = np.zeros((num, n))
    idles = np.zeros((num, n))
    for j in range(n - 1):
        arg = waits[:, j] + durations[:, j] - allowances[j]
        np.maximum(arg, 0.0, out=waits[:, j + 1])
        np.maximum(-arg, 0.0, out=idles[:, j + 1])
    return waits, idles


def batch_costs(allowances, durations, wait_cost, idle_cost):
    """Total cost of one schedule under each scenario: (N,)."""
    num, n = durations.shape
    wait = np.zeros(num)
    totals = np.zeros(num)
    for j in range(n - 1):
        arg = wait + durations[:, j] - allowances[j]
        wait = np.maximum(arg, 0.0)
        totals += wait_cost * wait + idle_cost * np.maximum(-arg, 0.0)
    return totals


def batch_cost_grads(allowances, durations, wait_cost, idle_cost):
    """Totals plus one subgradient row per scenario: ((N,), (N, n)).

    Backward sweep through the max recursion; grads[:, n-1] is 0 because the
    last allowance never enters the cost.
    """
    num, n = durations.shape
    args = np.empty((num, n - 1))
    wait = np.zeros(num)
    totals = np.zeros(num)
    for j in range(n - 1):
        arg = wait + durations[:, j] - allowances[j]
        args[:, j] = arg
        wait = np.maximum(arg, 0.0)
        totals += wait_cost * wait + idle_cost * np.maximum(-arg, 0.0)

    grads = np.zeros((num, n))
    u_next = np.full(num, wait_cost)
    for j in range(n - 2, -1, -1):
        arg = args[:, j]
        v = np.where(arg > 0.0, u_next, 0.0) - np.where(arg < 0.0, idle_cost, 0.0)
        grads[:, j] = -v
        u_next = wait_cost + v
    return totals, grads


def paired_cost_grads(allowances, durations, wait_cost, idle_cost):
    """Per-row schedules: allowances and durations both (T, n).

    Returns ((T,), (T, n)); used when every period carries its own allowance
    vector (predictions acting as the schedule).
    """
    num, n = durations.shape
    args = np.empty((num, n - 1))
    wait = np.zeros(num)
    totals = np.zeros(num)
    for j in range(n - 1):
        arg = wait + durations[:, j] - allowances[:, j]
        args[:, j] = arg
        wait = np.maximum(arg, 0.0)
        totals += wait_cost * wait + idle_cost * np.maximum(-arg, 0.0)

    grads = np.zeros((num, n))
    u_next = np.full(num, wait_cost)
    for j in range(n - 2, -1, -1):
        arg = args[:, j]
        v = np.where(arg > 0.0, u_next, 0.0) - np.where(arg < 0.0, idle_cost, 0.0)
        grads[:, j] = -v
        u_next = wait_cost + v
    return totals, grads
