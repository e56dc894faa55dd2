import numpy as np
import pytest

from telescope import regressors
from telescope.exceptions import SchemaMismatch, TooFewRows
from telescope.regressors import KINDS, FeatureMatrix, FittedModel, fit, predict


def season_matrix(n=96, period=12):
    season = np.sin(2 * np.pi * (np.arange(n) % period) / period)
    return FeatureMatrix(season[:, None], ["season"], season)


@pytest.mark.parametrize("kind", KINDS)
def test_constant_target(kind):
    X = np.random.default_rng(0).normal(size=(30, 3))
    model = fit(kind, FeatureMatrix(X, ["a", "b", "c"], np.full(30, 5.0)))
    np.testing.assert_allclose(predict(model, np.random.default_rng(1).normal(size=(7, 3))), 5.0,
                               atol=1e-9)


def test_boosting_fits_season_column():
    fm = season_matrix()
    model = fit("gradient_boosting", fm, params={"rounds": 400})
    np.testing.assert_allclose(predict(model, fm), fm.target, atol=1e-6)


def test_zero_rounds_is_mean():
    fm = season_matrix()
    model = fit("gradient_boosting", fm, params={"rounds": 0})
    np.testing.assert_allclose(predict(model, fm), fm.target.mean())


def test_cart_two_separable_rows():
    X = np.array([[0.0], [0.0], [1.0], [1.0]])
    y = np.array([2.0, 2.0, 7.0, 7.0])
    model = fit("cart", FeatureMatrix(X, ["x"], y), params={"min_leaf": 1})
    assert predict(model, np.array([[0.0], [1.0]])).tolist() == [2.0, 7.0]


@pytest.mark.parametrize("kind", KINDS)
def test_deterministic(kind):
    rng = np.random.default_rng(3)
    X = rng.normal(size=(60, 4))
    y = X[:, 0] * 2 + np.sin(X[:, 1]) + rng.normal(0, 0.1, 60)
    fm = FeatureMatrix(X, list("abcd"), y)
    a = predict(fit(kind, fm, seed=7), X)
    b = predict(fit(kind, fm, seed=7), X)
    assert a.tobytes() == b.tobytes()


@pytest.mark.parametrize("kind", KINDS)
def test_persistence_round_trip(kind):
    rng = np.random.default_rng(4)
    X = rng.normal(size=(40, 3))
    fm = FeatureMatrix(X, ["x", "y", "z"], X @ [1.0, -2.0, 0.5])
    model = fit(kind, fm, seed=1)
    text = model.dumps()
    again = FittedModel.loads(text)
    assert again.dumps() == text
    np.testing.assert_array_equal(predict(again, X), predict(model, X))


def test_cart_is_pruned_on_noise():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(80, 2))
    model = fit("cart", FeatureMatrix(X, ["a", "b"], rng.normal(size=80)))
    assert model.trees[0].n_leaves < 10


def test_forest_uses_subset_of_features():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(50, 6))
    model = fit("random_forest", FeatureMatrix(X, list("abcdef"), X[:, 0]), params={"n_trees": 5})
    assert len(model.trees) == 5
    assert all(t.depth <= 12 for t in model.trees)


def test_errors():
    with pytest.raises(TooFewRows):
        fit("cart", FeatureMatrix(np.ones((3, 1)), ["a"], [1.0, 2.0, 3.0]))
    with pytest.raises(SchemaMismatch):
        FeatureMatrix(np.ones((3, 2)), ["a"])
    model = fit("cart", FeatureMatrix(np.arange(8.0)[:, None], ["a"], np.arange(8.0)))
    with pytest.raises(SchemaMismatch):
        predict(model, FeatureMatrix(np.ones((2, 1)), ["b"]))
    with pytest.raises(ValueError):
        regressors.resolve_params("svr")
