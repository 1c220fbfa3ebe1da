import numpy as np
import pytest

from surfplan import (
    BoostConfig,
    ForestConfig,
    TreeConfig,
    ValidationError,
    fit_boosted,
    fit_forest,
    fit_tree,
)


@pytest.fixture
def regression_data():
    rng = np.random.default_rng(42)
    features = rng.normal(size=(80, 3))
    targets = features @ np.array([2.0, -1.0, 0.5]) + 0.1 * rng.normal(size=80)
    return features, targets


class TestForest:
    def test_single_tree_no_bootstrap_equals_tree(self, regression_data):
        features, targets = regression_data
        tree_cfg = TreeConfig(max_depth=4)
        forest = fit_forest(features, targets,
                            ForestConfig(n_estimators=1, tree=tree_cfg, bootstrap=False))
        tree = fit_tree(features, targets, tree_cfg)
        assert np.array_equal(forest.predict(features), tree.predict(features))

    def test_constant_targets(self, regression_data):
        features, _ = regression_data
        forest = fit_forest(features, np.full(len(features), 3.25), ForestConfig())
        assert np.allclose(forest.predict(features), 3.25, atol=1e-12)

    def test_seeded_determinism_and_seed_sensitivity(self, regression_data):
        features, targets = regression_data
        a = fit_forest(features, targets, ForestConfig(seed=1))
        b = fit_forest(features, targets, ForestConfig(seed=1))
        c = fit_forest(features, targets, ForestConfig(seed=2))
        assert np.array_equal(a.predict(features), b.predict(features))
        # different seeds draw different bootstraps; models may differ
        assert not np.array_equal(a.predict(features), c.predict(features))

    def test_prediction_is_mean_of_trees(self, regression_data):
        features, targets = regression_data
        forest = fit_forest(features, targets, ForestConfig(n_estimators=4, seed=3))
        stacked = np.stack([tree.predict(features) for tree in forest.trees])
        assert np.allclose(forest.predict(features), stacked.mean(axis=0), atol=1e-12)

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            fit_forest(np.empty((0, 2)), np.empty(0))


class TestBoosted:
    def test_single_full_strength_stage_equals_tree(self, regression_data):
        features, targets = regression_data
        tree_cfg = TreeConfig(max_depth=4)
        boosted = fit_boosted(features, targets,
                              BoostConfig(n_estimators=1, learning_rate=1.0,
                                          tree=tree_cfg, base_score=0.0))
        tree = fit_tree(features, targets, tree_cfg)
        assert np.allclose(boosted.predict(features), tree.predict(features), atol=1e-12)

    def test_constant_targets_with_mean_base(self, regression_data):
        features, _ = regression_data
        targets = np.full(len(features), -1.5)
        boosted = fit_boosted(features, targets, BoostConfig(n_estimators=5))
        assert np.allclose(boosted.predict(features), -1.5, atol=1e-12)
        assert all(tree.node_count == 1 for tree in boosted.trees)

    def test_training_mse_nonincreasing_per_stage(self, regression_data):
        features, targets = regression_data
        config = BoostConfig(n_estimators=25, learning_rate=0.3,
                             tree=TreeConfig(max_depth=3))
        boosted = fit_boosted(features, targets, config)
        prediction = np.full(len(targets), boosted.base_score)
        previous = float(np.mean((targets - prediction) ** 2))
        for tree in boosted.trees:
            prediction = prediction + config.learning_rate * tree.predict(features)
            mse = float(np.mean((targets - prediction) ** 2))
            assert mse <= previous + 1e-12
            previous = mse

    def test_outputs_bounded_by_leaf_extremes(self, regression_data):
        features, targets = regression_data
        config = BoostConfig(n_estimators=10, learning_rate=0.2,
                             tree=TreeConfig(max_depth=3))
        boosted = fit_boosted(features, targets, config)
        low = boosted.base_score + config.learning_rate * sum(
            tree.leaf_values().min() for tree in boosted.trees)
        high = boosted.base_score + config.learning_rate * sum(
            tree.leaf_values().max() for tree in boosted.trees)
        rng = np.random.default_rng(8)
        outputs = boosted.predict(rng.normal(scale=5, size=(200, 3)))
        assert outputs.min() >= low - 1e-9
        assert outputs.max() <= high + 1e-9

    def test_default_configs_carry_reference_hyperparameters(self):
        boost = BoostConfig()
        assert (boost.n_estimators, boost.learning_rate) == (200, 0.1)
        assert (boost.tree.max_depth, boost.tree.min_child_weight,
                boost.tree.gamma) == (6, 5, 0.5)
        forest = ForestConfig()
        assert forest.n_estimators == 10
        assert (forest.tree.max_depth, forest.tree.min_samples_split) == (20, 10)

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            fit_boosted(np.empty((0, 2)), np.empty(0))
