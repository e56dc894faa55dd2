"""
End-to-end hybrid forecast.

The series is shifted positive and Box-Cox transformed, its dominant periods
are detected, and it is split into trend, periodic season and irregular
parts. A tree learner maps Fourier terms plus the season to the de-trended
series; the trend is extrapolated with ARIMA; both future parts are summed
and transformed back. Series without a dominant period are forecast with
ARIMA on the transformed scale instead.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .arima import auto_arima, forecast_arima
from .config import Settings
from .decomposition import continue_season, extend_fourier, fourier_terms, stl
from .exceptions import RecommenderNotTrained, TooShort
from . import regressors
from .spectral import dominant_frequencies
from .timeseries import TransformState, boxcox, estimate_lambda_guerrero, shift_positive, validate

MIN_LENGTH = 10
MODES = ("time_critical", "recommended")
FALLBACK = "fallback_arima"


@dataclass
class Prepared:
    """A series after preprocessing and feature extraction."""

    transformed: np.ndarray
    state: TransformState
    periods: list
    decomposition: object = None
    fourier: object = None

    @property
    def seasonal(self):
        return self.periods[0] > 1

    @property
    def trend(self):
        if self.decomposition is not None:
            return self.decomposition.trend
        return linear_trend(self.transformed)

    @property
    def detrended(self):
        return self.transformed - self.trend

    def features(self):
        """Training feature matrix: Fourier columns followed by the season."""
        names = self.fourier.names + ["season"]
        cols = np.column_stack([self.fourier.columns, self.decomposition.season])
        return regressors.FeatureMatrix(cols, names, self.detrended)

    def future_features(self, horizon):
        fut = extend_fourier(self.fourier, horizon)
        season = continue_season(self.decomposition.season, self.periods[0], horizon)
        names = self.fourier.names + ["season"]
        return regressors.FeatureMatrix(np.column_stack([fut.columns, season]), names)


@dataclass
class ForecastResult:
    forecast: np.ndarray
    frequencies: list
    lam: float
    shift: float
    regressor_used: str
    transformed_forecast: np.ndarray
    component_forecasts: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def diagnostics(self):
        """Plain-data view of everything except the forecast itself."""
        comps = {k: np.asarray(v).tolist() for k, v in self.component_forecasts.items()}
        return {
            "frequencies": list(self.frequencies),
            "lambda": self.lam,
            "shift": self.shift,
            "regressor_used": self.regressor_used,
            "transformed_forecast": self.transformed_forecast.tolist(),
            "component_forecasts": comps,
            "elapsed_seconds": self.elapsed,
        }


def linear_trend(values):
    t = np.arange(len(values), dtype=float)
    slope, intercept = np.polyfit(t, values, 1)
    return intercept + slope * t


def prepare(values, settings=None):
    """Shift, transform, detect periods and decompose a raw series."""
    settings = settings or Settings()
    shifted, shift = shift_positive(values)
    periods = dominant_frequencies(shifted, settings.max_count, settings.power_fraction,
                                   settings.median_ratio, settings.alpha)
    lam = estimate_lambda_guerrero(shifted, periods[0])
    transformed = boxcox(shifted, lam)
    prep = Prepared(transformed, TransformState(lam, shift), periods)
    if prep.seasonal:
        prep.decomposition = stl(transformed, periods[0])
        prep.fourier = fourier_terms(transformed.size, periods)
    return prep


def forecast_prepared(prep, horizon, kind="gradient_boosting", seed=0, settings=None):
    """
    Forecast on the transformed scale from prepared features.

    Returns ``(transformed_forecast, regressor_used, components)``.
    """
    settings = settings or Settings()
    if not prep.seasonal:
        fit = auto_arima(prep.transformed)
        out = forecast_arima(fit, prep.transformed, horizon)
        return out, FALLBACK, {"trend": out, "season": np.zeros(horizon),
                               "detrended": np.zeros(horizon)}
    model = regressors.fit(kind, prep.features(), seed=seed, params=settings.params_for(kind))
    future = prep.future_features(horizon)
    detrended = regressors.predict(model, future)
    trend_fit = auto_arima(prep.trend)
    trend = forecast_arima(trend_fit, prep.trend, horizon)
    components = {"trend": trend, "season": future.columns[:, -1], "detrended": detrended}
    return trend + detrended, kind, components


def forecast(values, horizon, mode="time_critical", seed=0, recommender=None, settings=None,
             clock=time.perf_counter):
    """
    Forecast ``horizon`` future values of a univariate series.

    ``mode="recommended"`` picks the learner with a trained recommender model
    (see :mod:`telescope.recommender`); ``time_critical`` always uses gradient
    boosting. ``clock`` only feeds ``ForecastResult.elapsed``.
    """
    start = clock()
    settings = settings or Settings()
    y = validate(values)
    horizon = int(horizon)
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if y.size < MIN_LENGTH:
        raise TooShort(f"forecast needs at least {MIN_LENGTH} observations, got {y.size}")
    if mode == "recommended" and recommender is None:
        raise RecommenderNotTrained("mode 'recommended' requires a trained recommender model")

    prep = prepare(y, settings)
    kind = "gradient_boosting"
    if mode == "recommended" and prep.seasonal:
        from .recommender import recommend_prepared
        kind = recommend_prepared(recommender, prep)
    transformed, used, components = forecast_prepared(prep, horizon, kind, seed, settings)
    out = prep.state.inverse(transformed)
    return ForecastResult(
        forecast=out,
        frequencies=prep.periods,
        lam=prep.state.lam,
        shift=prep.state.shift,
        regressor_used=used,
        transformed_forecast=transformed,
        component_forecasts=components,
        elapsed=clock() - start,
    )
