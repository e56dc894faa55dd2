import numpy as np
import pytest

from telescope.arima import ArimaFit, ArimaOrder, auto_arima, difference, forecast_arima


def test_difference():
    assert difference([1, 3, 6, 10], 1).tolist() == [2, 3, 4]
    assert difference([1, 3, 6, 10], 2).tolist() == [1, 1]
    assert difference([1, 3, 6, 10], 0).tolist() == [1, 3, 6, 10]


def test_ramp_continues():
    y = 3.0 + 2.0 * np.arange(40)
    fit = auto_arima(y)
    assert fit.order.d >= 1
    fc = forecast_arima(fit, y, 10)
    expected = 3.0 + 2.0 * np.arange(40, 50)
    assert np.all(np.abs(np.diff(np.r_[y[-1], fc]) - 2.0) <= 0.1)
    np.testing.assert_allclose(fc, expected, rtol=0.05)


def test_white_noise():
    y = np.random.default_rng(0).normal(5.0, 1.0, 200)
    fit = auto_arima(y)
    assert fit.order.p + fit.order.q <= 1
    fc = forecast_arima(fit, y, 5)
    assert np.all(np.abs(fc - y.mean()) <= 2 * y.std(ddof=1) / np.sqrt(200) + 0.2)


def test_ar1_coefficient():
    rng = np.random.default_rng(1)
    e = rng.normal(size=500)
    y = np.zeros(500)
    for t in range(1, 500):
        y[t] = 0.8 * y[t - 1] + e[t]
    fit = auto_arima(y)
    assert fit.order.d == 0
    assert abs(fit.ar_coeffs[0] - 0.8) <= 0.1
    assert len(fit.ar_coeffs) == fit.order.p
    assert len(fit.ma_coeffs) == fit.order.q


def hand_fit(order, intercept=0.0):
    return ArimaFit(order=ArimaOrder(*order), ar_coeffs=np.zeros(0), ma_coeffs=np.zeros(0),
                    intercept=intercept, sigma2=1.0, aicc=0.0)


def test_hand_forecasts():
    assert forecast_arima(hand_fit((0, 0, 0), 3.5), [1.0, 2.0], 3).tolist() == [3.5] * 3
    assert forecast_arima(hand_fit((0, 1, 0)), [1.0, 2, 3, 4], 3).tolist() == [4, 4, 4]
    assert forecast_arima(hand_fit((0, 1, 0), 1.0), [1.0, 2, 3, 4], 3).tolist() == [5, 6, 7]


def test_constant_series():
    y = np.full(30, 7.0)
    fit = auto_arima(y)
    np.testing.assert_allclose(forecast_arima(fit, y, 4), 7.0, atol=1e-9)


def test_fitted_models_are_stationary_and_invertible():
    rng = np.random.default_rng(2)
    for _ in range(5):
        y = rng.normal(size=150).cumsum()
        fit = auto_arima(y)
        for coeffs, sign in ((fit.ar_coeffs, -1), (fit.ma_coeffs, 1)):
            if len(coeffs):
                roots = np.roots(np.r_[sign * np.asarray(coeffs)[::-1], 1.0])
                assert np.all(np.abs(roots) > 1 - 1e-6)


def test_order_validation():
    with pytest.raises(ValueError):
        ArimaOrder(6, 0, 0)
