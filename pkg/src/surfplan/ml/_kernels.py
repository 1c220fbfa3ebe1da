"""Best-split kernel selection: compiled extension when available, numpy otherwise.

Both implementations scan a sorted feature column for the split with maximal
SSE reduction and must agree bit-for-bit: the pure path uses np.cumsum (a
sequential accumulation, like the C loop) and evaluates the gain expression in
the same operand order as the compiled kernel. Set SURFPLAN_PURE_SPLIT=1 to
force the pure path, e.g. for benchmarking.
"""

from __future__ import annotations

import os

import numpy as np


def pure_best_split(values: np.ndarray, targets: np.ndarray, min_leaf: int):
    """Best split of a sorted column. Returns (gain, threshold, left_count).

    ``values`` must be sorted ascending with ``targets`` aligned. Candidates
    are midpoints between consecutive distinct values whose children both hold
    at least ``min_leaf`` samples; gain is the reduction in the sum of squared
    errors. Ties keep the lowest threshold. Gain is -inf when no candidate
    exists.
    """
    n = values.shape[0]
    if n < 2:
        return float("-inf"), 0.0, 0
    csum = np.cumsum(targets)
    total = csum[-1]
    parent_term = total * total / n
    left_n = np.arange(1, n)
    right_n = n - left_n
    left_sum = csum[:-1]
    right_sum = total - left_sum
    gains = left_sum * left_sum / left_n + right_sum * right_sum / right_n - parent_term
    thresholds = (values[:-1] + values[1:]) * 0.5
    valid = (values[1:] > values[:-1]) & (left_n >= min_leaf) & (right_n >= min_leaf)
    # A midpoint that rounds up to the right-hand value cannot separate the two.
    valid &= thresholds < values[1:]
    if not valid.any():
        return float("-inf"), 0.0, 0
    gains = np.where(valid, gains, -np.inf)
    best = int(np.argmax(gains))
    return float(gains[best]), float(thresholds[best]), best + 1


try:
    from surfplan.ml._split_fast import best_split_column as compiled_best_split
except ImportError:  # extension not built; fall back
    compiled_best_split = None

if compiled_best_split is not None and not os.environ.get("SURFPLAN_PURE_SPLIT"):
    _active = compiled_best_split
    _active_name = "compiled"
else:
    _active = pure_best_split
    _active_name = "pure"


def best_split_column(values: np.ndarray, targets: np.ndarray, min_leaf: int):
    return _active(values, targets, min_leaf)


def active_kernel() -> str:
    """Which implementation is live: 'compiled' or 'pure'."""
    return _active_name
