import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telescope import recommender
from telescope.exceptions import EmptyCorpus, RecommenderNotTrained
from telescope.recommender import (
    RecommenderModel, degradation, generate_series, predicted_degradation, select,
)
from telescope.regressors import KINDS
from telescope.synth import trend_season_noise


def test_degradation_examples():
    assert degradation([2, 1, 4]).tolist() == [2, 1, 4]
    np.testing.assert_allclose(degradation([0.2, 0.1, 0.4]), [2, 1, 4])
    assert degradation([3, 3, 3]).tolist() == [1, 1, 1]
    assert degradation([0, 0, 1]).min() == 1


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(1e-6, 1e6), min_size=3, max_size=3), st.floats(1e-3, 1e3))
def test_degradation_properties(eps, scale):
    theta = degradation(eps)
    assert theta.min() == 1.0
    assert np.all(theta >= 1)
    np.testing.assert_allclose(degradation(np.array(eps) * scale), theta, rtol=1e-12)


def test_select():
    assert select([1.5, 1.0, 1.2]) == "random_forest"
    assert select([1.1, 1.1, 1.1]) == "cart"
    assert select(np.array([1.5, 1.0, 1.2]) * 7.3) == "random_forest"


def corpus(count, seed=0):
    rng = np.random.default_rng(seed)
    return [trend_season_noise(rng, period=12, cycles=6)[0] for _ in range(count)]


def test_generate_series():
    one = corpus(1)
    assert generate_series(one, 0) == []
    out = generate_series(one, 3, seed=1)
    assert len(out) == 3
    assert all(np.all(np.isfinite(x)) and x.size <= one[0].size for x in out)
    with pytest.raises(EmptyCorpus):
        generate_series([], 2)


@pytest.mark.slow
def test_generate_ten_thousand():
    rng = np.random.default_rng(0)
    base = [trend_season_noise(rng)[0] for _ in range(150)]
    assert len(base) + len(generate_series(base, 9850, seed=0)) == 10_000


def test_evaluate_base_methods_shape():
    deg = recommender.evaluate_base_methods(corpus(1)[0])
    assert deg.kinds == KINDS
    assert deg.theta.min() == 1.0


@pytest.fixture(scope="module")
def trained():
    return recommender.train(corpus(5), augment_to=20, seed=0,
                             forest_params={"n_trees": 20})


def test_train_bookkeeping(trained):
    assert set(trained.models) == set(KINDS)
    assert trained.provenance["rows"] == 20
    for model in trained.models.values():
        assert model.kind == "random_forest"
        assert len(model.feature_names) == 20


def test_retrain_is_byte_identical(trained):
    again = recommender.train(corpus(5), augment_to=20, seed=0, forest_params={"n_trees": 20})
    assert again.dumps() == trained.dumps()


def test_persistence(trained, tmp_path):
    path = tmp_path / "rec.model"
    trained.save(path)
    loaded = RecommenderModel.load(path)
    assert loaded.dumps() == trained.dumps()
    x = corpus(1, seed=9)[0]
    assert recommender.recommend(loaded, x) == recommender.recommend(trained, x)
    assert recommender.recommend(trained, x) in KINDS


def test_untrained():
    with pytest.raises(RecommenderNotTrained):
        predicted_degradation(None, np.zeros(20))
    with pytest.raises(RecommenderNotTrained):
        RecommenderModel.loads('{"format": "other"}')
