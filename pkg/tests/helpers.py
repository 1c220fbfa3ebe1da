"""Independent reference implementations used to cross-check the library.

These deliberately avoid the library's code paths: gains are computed from
explicit sum-of-squares loops rather than prefix sums, and pearson is the
textbook formula over Python floats.
"""

import math

import numpy as np


def sse(values) -> float:
    mean = sum(values) / len(values)
    return sum((v - mean) ** 2 for v in values)


def reference_best_split(features, targets, min_child_weight):
    """Exhaustive best (feature, threshold) by SSE reduction.

    Returns (gain, feature, threshold) or None when no valid candidate exists.
    Ties prefer the lower feature index, then the lower threshold.
    """
    features = np.asarray(features, dtype=float)
    targets = np.asarray(targets, dtype=float)
    n = features.shape[0]
    parent = sse(targets.tolist())
    best = None
    for f in range(features.shape[1]):
        column = features[:, f]
        distinct = sorted(set(column.tolist()))
        for lo, hi in zip(distinct[:-1], distinct[1:]):
            threshold = (lo + hi) * 0.5
            if threshold >= hi:
                continue
            left = column <= threshold
            n_left = int(left.sum())
            if n_left < min_child_weight or n - n_left < min_child_weight:
                continue
            gain = parent - sse(targets[left].tolist()) - sse(targets[~left].tolist())
            if best is None or gain > best[0] + 1e-9 * max(1.0, abs(best[0])):
                best = (gain, f, threshold)
    return best


def split_gain(features, targets, feature, threshold, min_child_weight):
    """SSE reduction of one concrete split, or None if it is inadmissible."""
    column = features[:, feature]
    left = column <= threshold
    n_left = int(left.sum())
    if n_left < min_child_weight or len(targets) - n_left < min_child_weight:
        return None
    if n_left == 0 or n_left == len(targets):
        return None
    return (sse(targets.tolist()) - sse(targets[left].tolist())
            - sse(targets[~left].tolist()))


def verify_tree_node(tree, node, features, targets, config, depth):
    """Recursively check every node of a fitted tree against the reference.

    At every internal node the chosen split must be admissible and achieve the
    brute-force best gain (distinct features can induce identical partitions,
    so gains can tie exactly; optimality, not identity, is the contract here;
    exact tie-break order is pinned separately on crafted cases). Returns the
    number of nodes checked.
    """
    leaf_value = sum(targets.tolist()) / len(targets)
    assert abs(tree.value[node] - leaf_value) < 1e-9 * max(1.0, abs(leaf_value)), \
        f"node {node}: leaf value {tree.value[node]} != mean {leaf_value}"

    must_stop = (depth >= config.max_depth
                 or len(targets) < config.min_samples_split)
    best = None if must_stop else reference_best_split(
        features, targets, config.min_child_weight)
    is_leaf = tree.feature[node] == -1
    tolerance = 1e-9 * max(1.0, abs(best[0])) if best is not None else 0.0

    if is_leaf:
        # A leaf is correct when no admissible split clears both the positive-
        # gain rule and the minimum-gain threshold (up to float tolerance).
        if best is not None:
            assert best[0] <= max(config.gamma, 0.0) + max(tolerance, 1e-9), \
                f"node {node}: tree is a leaf but reference found gain {best[0]}"
        return 1

    assert best is not None, \
        f"node {node}: tree split although stopping rules forbid any split"
    gain, _, _ = best
    actual = split_gain(features, targets, int(tree.feature[node]),
                        float(tree.threshold[node]), config.min_child_weight)
    assert actual is not None, f"node {node}: tree chose an inadmissible split"
    assert actual >= gain - tolerance, \
        (f"node {node}: tree split gain {actual} is worse than brute-force "
         f"best {gain}")
    assert actual > -tolerance and actual >= config.gamma - tolerance, \
        f"node {node}: tree split gain {actual} violates the minimum-gain rule"

    left_mask = features[:, tree.feature[node]] <= tree.threshold[node]
    checked = 1
    checked += verify_tree_node(tree, tree.left[node], features[left_mask],
                                targets[left_mask], config, depth + 1)
    checked += verify_tree_node(tree, tree.right[node], features[~left_mask],
                                targets[~left_mask], config, depth + 1)
    return checked


def pearson_reference(x, y) -> float:
    n = len(x)
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    num = sum((a - mean_x) * (b - mean_y) for a, b in zip(x, y))
    den_x = sum((a - mean_x) ** 2 for a in x)
    den_y = sum((b - mean_y) ** 2 for b in y)
    return num / math.sqrt(den_x * den_y)
