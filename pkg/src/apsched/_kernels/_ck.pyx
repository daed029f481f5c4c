# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled recursion kernels (hot inner loops).

Mirror of `_py`: identical signatures, identical kink handling (argument
exactly 0.0 leaves both branches inactive).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def batch_waits_idles(double[::1] allowances, double[:, ::1] durations):
    cdef Py_ssize_t num = durations.shape[0]
    cdef Py_ssize_t n = durations.shape[1]
    waits_arr = np.zeros((num, n))
    idles_arr = np.zeros((num, n))
    cdef double[:, ::1] waits = waits_arr
    cdef double[:, ::1] idles = idles_arr
    cdef Py_ssize_t t, j
    cdef double arg
    for t in range(num):
        for j in range(n - 1):
            arg = waits[t, j] + durations[t, j] - allowances[j]
            if arg > 0.0:
                waits[t, j + 1] = arg
            elif arg < 0.0:
                idles[t, j + 1] = -arg
    return waits_arr, idles_arr


def batch_costs(double[::1] allowances, double[:, ::1] durations,
                double wait_cost, double idle_cost):
    cdef Py_ssize_t num = durations.shape[0]
    cdef Py_ssize_t n = durations.shape[1]
    totals_arr = np.zeros(num)
    cdef double[::1] totals = totals_arr
    cdef Py_ssize_t t, j
    cdef double arg, wait, total
    for t in range(num):
        wait = 0.0
        total = 0.0
        for j in range(n - 1):
            arg = wait + durations[t, j] - allowances[j]
            if arg > 0.0:
                wait = arg
                total += wait_cost * arg
            else:
                wait = 0.0
                total -= idle_cost * arg
        totals[t] = total
    return totals_arr


def batch_cost_grads(double[::1] allowances, double[:, ::1] durations,
                     double wait_cost, double idle_cost):
    cdef Py_ssize_t num = durations.shape[0]
    cdef Py_ssize_t n = durations.shape[1]
    totals_arr = np.zeros(num)
    grads_arr = np.zeros((num, n))
    args_arr = np.empty(n - 1)
    cdef double[::1] totals = totals_arr
    cdef double[:, ::1] grads = grads_arr
    cdef double[::1] args = args_arr
    cdef Py_ssize_t t, j
    cdef double arg, wait, total, u_next, v
    for t in range(num):
        wait = 0.0
        total = 0.0
        for j in range(n - 1):
            arg = wait + durations[t, j] - allowances[j]
            args[j] = arg
            if arg > 0.0:
                wait = arg
                total += wait_cost * arg
            else:
                wait = 0.0
                total -= idle_cost * arg
        totals[t] = total
        u_next = wait_cost
        for j in range(n - 2, -1, -1):
            arg = args[j]
            if arg > 0.0:
                v = u_next
            elif arg < 0.0:
                v = -idle_cost
            else:
                v = 0.0
            grads[t, j] = -v
            u_next = wait_cost + v
    return totals_arr, grads_arr


def paired_cost_grads(double[:, ::1] allowances, double[:, ::1] durations,
                      double wait_cost, double idle_cost):
    cdef Py_ssize_t num = durations.shape[0]
    cdef Py_ssize_t n = durations.shape[1]
    totals_arr = np.zeros(num)
    grads_arr = np.zeros((num, n))
    args_arr = np.empty(n - 1)
    cdef double[::1] totals = totals_arr
    cdef double[:, ::1] grads = grads_arr
    cdef double[::1] args = args_arr
    cdef Py_ssize_t t, j
    cdef double arg, wait, total, u_next, v
    for t in range(num):
        wait = 0.0
        total = 0.0
        for j in range(n - 1):
            arg = wait + durations[t, j] - allowances[t, j]
            args[j] = arg
            if arg > 0.0:
                wait = arg
                total += wait_cost * arg
            else:
                wait = 0.0
                total -= idle_cost * arg
        totals[t] = total
        u_next = wait_cost
        for j in range(n - 2, -1, -1):
            arg = args[j]
            if arg > 0.0:
                v = u_next
            elif arg < 0.0:
                v = -idle_cost
            else:
                v = 0.0
            grads[t, j] = -v
            u_next = wait_cost + v
    return totals_arr, grads_arr
