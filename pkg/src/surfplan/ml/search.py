"""Seeded k-fold cross-validation grid search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..core import ValidationError
from .tree import _as_feature_matrix, _as_targets


def kfold_indices(n: int, folds: int, seed: int) -> list[np.ndarray]:
    """Deterministic shuffled partition of range(n) into ``folds`` blocks."""
    if folds < 2:
        raise ValidationError(f"folds must be >= 2, got {folds}")
    if n < folds:
        raise ValidationError(f"need at least {folds} samples for {folds} folds, got {n}")
    permutation = np.random.default_rng(seed).permutation(n)
    return [block for block in np.array_split(permutation, folds)]


@dataclass(frozen=True)
class GridSearchResult:
    best_config: object
    best_score: float
    scores: tuple[float, ...]  # mean validation MSE per grid entry, grid order


def grid_search(features, targets, grid: Sequence, folds: int,
                fitter: Callable, seed: int = 0) -> GridSearchResult:
    """Pick the grid config with the lowest mean validation MSE.

    ``fitter(config, features, targets)`` must return a model exposing
    ``predict``. The fold partition is shuffled once from ``seed`` and shared
    by every config; ties keep the earlier grid entry.
    """
    if len(grid) == 0:
        raise ValidationError("grid must not be empty")
    mat = _as_feature_matrix(features)
    y = _as_targets(targets, mat.shape[0])
    blocks = kfold_indices(mat.shape[0], folds, seed)
    all_rows = np.arange(mat.shape[0])

    scores = []
    for config in grid:
        fold_mse = []
        for block in blocks:
            train_rows = np.setdiff1d(all_rows, block, assume_unique=True)
            model = fitter(config, mat[train_rows], y[train_rows])
            error = model.predict(mat[block]) - y[block]
            fold_mse.append(float(np.mean(error * error)))
        scores.append(float(np.mean(fold_mse)))

    best = 0
    for i, score in enumerate(scores):
        if score < scores[best]:
            best = i
    return GridSearchResult(best_config=grid[best], best_score=scores[best],
                            scores=tuple(scores))
