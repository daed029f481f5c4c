"""Recursion kernels with a compiled core and a NumPy fallback.

The compiled extension (`_ck`, Cython) is preferred when it was built;
otherwise the pure-NumPy module (`_py`) provides the same functions.
Set APSCHED_PURE_PYTHON=1 to force the fallback, e.g. for benchmarking
(`benchmarks/bench_kernels.py`) or debugging.
"""

import os

if os.environ.get("APSCHED_PURE_PYTHON"):
    from . import _py as impl
else:
    try:
        from . import _ck as impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _py as impl

BACKEND = impl.BACKEND
batch_waits_idles = impl.batch_waits_idles
batch_costs = impl.batch_costs
batch_cost_grads = impl.batch_cost_grads
paired_cost_grads = impl.paired_cost_grads

__all__ = [
    "BACKEND",
    "batch_waits_idles",
    "batch_costs",
    "batch_cost_grads",
    "paired_cost_grads",
]
