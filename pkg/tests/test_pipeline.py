import numpy as np
import pytest

from telescope.benchmark import smape
from telescope.exceptions import RecommenderNotTrained, TooShort
from telescope.pipeline import FALLBACK, forecast, prepare

from conftest import seasonal_series


def test_trend_plus_sine():
    y = seasonal_series(144)
    result = forecast(y[:120], 24)
    assert result.frequencies[0] == 12
    assert result.regressor_used == "gradient_boosting"
    assert smape(y[120:], result.forecast) < 5.0


def test_white_noise_falls_back():
    y = np.random.default_rng(0).normal(50, 2, 150)
    result = forecast(y, 10)
    assert result.frequencies == [1]
    assert result.regressor_used == FALLBACK
    assert np.all(np.abs(result.forecast - y.mean()) <= 3 * y.std(ddof=1))


def test_constant():
    result = forecast(np.full(40, 7.0), 5)
    np.testing.assert_allclose(result.forecast, 7.0, atol=1e-6)
    assert result.regressor_used == FALLBACK


def test_negative_values_are_shifted():
    y = seasonal_series(96, level=-40.0)
    result = forecast(y, 12)
    assert result.shift > 0
    assert np.all(np.isfinite(result.forecast))
    assert result.forecast.size == 12


@pytest.mark.parametrize("kind", ["cart", "random_forest", "gradient_boosting"])
def test_settings_and_learners_via_prepare(kind):
    from telescope.pipeline import forecast_prepared
    prep = prepare(seasonal_series(96))
    out, used, comps = forecast_prepared(prep, 8, kind)
    assert used == kind
    np.testing.assert_allclose(out, comps["trend"] + comps["detrended"])


def test_errors():
    with pytest.raises(TooShort):
        forecast(np.arange(5.0), 2)
    with pytest.raises(RecommenderNotTrained):
        forecast(seasonal_series(), 3, mode="recommended")
    with pytest.raises(ValueError):
        forecast(seasonal_series(), 0)


def test_diagnostics_fields():
    d = forecast(seasonal_series(), 6, seed=3).diagnostics()
    assert set(d) >= {"frequencies", "lambda", "shift", "regressor_used", "component_forecasts"}
    assert len(d["transformed_forecast"]) == 6


def test_seeded_runs_identical():
    y = seasonal_series() + np.random.default_rng(2).normal(0, 0.3, 120)
    a = forecast(y, 12, seed=5).forecast
    b = forecast(y, 12, seed=5).forecast
    assert a.tobytes() == b.tobytes()
