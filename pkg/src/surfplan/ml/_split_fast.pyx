# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled best-split scan for regression trees.

Mirrors surfplan.ml._kernels.pure_best_split exactly: same candidate set, same
gain formula evaluated in the same operand order, same lowest-threshold
tie-break. Keeping the arithmetic identical makes the two paths bit-compatible.
"""

from libc.math cimport INFINITY


def best_split_column(const double[::1] values, const double[::1] targets,
                      Py_ssize_t min_leaf):
    """Best split of a sorted column. Returns (gain, threshold, left_count)."""
    cdef Py_ssize_t n = values.shape[0]
    if n < 2:
        return -INFINITY, 0.0, 0

    cdef double total = 0.0
    cdef Py_ssize_t i
    for i in range(n):
        total += targets[i]
    cdef double parent_term = total * total / <double> n

    cdef double best_gain = -INFINITY
    cdef double best_threshold = 0.0
    cdef Py_ssize_t best_left = 0

    cdef double left_sum = 0.0
    cdef double right_sum, gain, threshold
    cdef Py_ssize_t left_n, right_n

    for i in range(n - 1):
        left_sum += targets[i]
        if values[i + 1] <= values[i]:
            continue
        left_n = i + 1
        right_n = n - left_n
        if left_n < min_leaf or right_n < min_leaf:
            continue
        threshold = (values[i] + values[i + 1]) * 0.5
        if threshold >= values[i + 1]:
            continue
        right_sum = total - left_sum
        gain = (left_sum * left_sum / <double> left_n
                + right_sum * right_sum / <double> right_n
                - parent_term)
        if gain > best_gain:
            best_gain = gain
            best_threshold = threshold
            best_left = left_n

    if best_left == 0:
        return -INFINITY, 0.0, 0
    return best_gain, best_threshold, best_left
