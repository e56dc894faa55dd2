"""Hybrid decomposition-based time-series forecasting."""

from .benchmark import EvalProtocol, friedman, naive_forecast, seasonal_naive_forecast, smape
from .config import Settings, load_config, parse_config
from .decomposition import Decomposition, stl
from .exceptions import DataError, RecommenderNotTrained, TelescopeError
from .features import MetaAttributes, extract_meta_attributes
from .pipeline import ForecastResult, forecast
from .recommender import RecommenderModel, recommend
from .recommender import train as train_recommender
from .spectral import dominant_frequencies, periodogram
from .timeseries import TransformState, boxcox, estimate_lambda_guerrero, inv_boxcox

__version__ = "0.1.0"

__all__ = [
    "DataError", "Decomposition", "EvalProtocol", "ForecastResult", "MetaAttributes",
    "RecommenderModel", "RecommenderNotTrained", "Settings", "TelescopeError",
    "TransformState", "boxcox", "dominant_frequencies", "estimate_lambda_guerrero",
    "extract_meta_attributes", "forecast", "friedman", "inv_boxcox", "load_config",
    "naive_forecast", "parse_config", "periodogram", "recommend", "seasonal_naive_forecast",
    "smape", "stl", "train_recommender",
]
