"""
Additive decomposition with a periodic (non-evolving) seasonal pattern,
Fourier regressors, and continuation of recurring patterns into the future.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import PeriodTooLargeForSeries, TooShort
from .timeseries import validate

STL_ITERATIONS = 2


@dataclass(frozen=True)
class Decomposition:
    trend: np.ndarray
    season: np.ndarray
    irregular: np.ndarray
    period: int

    @property
    def detrended(self):
        return self.season + self.irregular

    def to_csv(self, values):
        rows = ["value,trend,season,irregular"]
        for row in zip(np.asarray(values, dtype=float).tolist(), self.trend.tolist(),
                       self.season.tolist(), self.irregular.tolist()):
            rows.append(",".join(repr(v) for v in row))
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class FourierTerms:
    """Sine/cosine regressors: columns ``[sin_m1, cos_m1, sin_m2, cos_m2, ...]``."""

    columns: np.ndarray
    periods: tuple

    @property
    def names(self):
        return [f"{fn}_{m}" for m in self.periods for fn in ("sin", "cos")]

    @property
    def column_periods(self):
        return [m for m in self.periods for _ in range(2)]


def moving_average_weights(period):
    """Centred weights spanning ``period`` (odd) or ``period + 1`` (even) points."""
    if period % 2:
        return np.full(period, 1.0 / period)
    w = np.full(period + 1, 1.0 / period)
    w[0] = w[-1] = 0.5 / period
    return w


def _line_fit(t, y, at):
    slope, intercept = np.polyfit(t, y, 1)
    return intercept + slope * at


def smooth_trend(values, period):
    """
    Centred moving average with linear extrapolation at both ends.

    Where the window does not fit, a least-squares line through the nearest
    window of moving-average values is extended outwards.
    """
    y = np.asarray(values, dtype=float)
    w = moving_average_weights(period)
    half = w.size // 2
    n = y.size
    if n < w.size + 1:
        t = np.arange(n, dtype=float)
        return _line_fit(t, y, t)
    trend = np.empty(n)
    trend[half:n - half] = np.convolve(y, w, mode="valid")
    if half:
        span = min(w.size, n - 2 * half)
        head = np.arange(half, half + span, dtype=float)
        trend[:half] = _line_fit(head, trend[half:half + span], np.arange(half))
        tail = np.arange(n - half - span, n - half, dtype=float)
        trend[n - half:] = _line_fit(tail, trend[n - half - span:n - half],
                                     np.arange(n - half, n))
    return trend


def periodic_means(values, period):
    """Per-phase means tiled over the series, centred to sum zero per period."""
    y = np.asarray(values, dtype=float)
    phase = np.arange(y.size) % period
    sums = np.bincount(phase, weights=y, minlength=period)
    counts = np.bincount(phase, minlength=period)
    means = sums / counts
    means = means - means.mean()
    return means[phase]


def stl(values, period, iterations=STL_ITERATIONS):
    """
    Decompose ``values`` into trend, periodic season and irregular parts.

    The seasonal component is the centred per-phase mean of the de-trended
    series; the trend is a centred moving average of the deseasonalised
    series. The irregular part is whatever remains, so the three components
    always add back up to the input.
    """
    y = validate(values)
    period = int(period)
    if period < 2:
        raise PeriodTooLargeForSeries(f"period must be >= 2, got {period}")
    if y.size < 2 * period:
        raise PeriodTooLargeForSeries(
            f"series of length {y.size} is shorter than two periods of {period}")
    trend = smooth_trend(y, period)
    season = np.zeros_like(y)
    for _ in range(iterations):
        season = periodic_means(y - trend, period)
        trend = smooth_trend(y - season, period)
    irregular = y - trend - season
    return Decomposition(trend=trend, season=season, irregular=irregular, period=period)


def continuation_index(n, period, horizon):
    """0-based source index for each future step ``k = 1 .. horizon``."""
    k = np.arange(1, horizon + 1)
    return n + k - period * ((k - 1) // period + 1) - 1


def continue_season(season, period, horizon):
    """Continue a recurring pattern by repeating its last full period."""
    s = np.asarray(season, dtype=float)
    if s.size < period:
        raise TooShort(f"need at least one full period ({period}) to continue, got {s.size}")
    return s[continuation_index(s.size, int(period), int(horizon))]


def fourier_terms(length, periods):
    """Sine and cosine columns with period ``m`` for each requested period."""
    periods = tuple(int(m) for m in periods)
    if any(m < 2 for m in periods):
        raise ValueError("Fourier periods must be >= 2")
    t = np.arange(int(length))
    cols = []
    for m in periods:
        # phase-based so rows repeat exactly every m steps
        angle = 2.0 * np.pi * (t % m) / m
        cols += [np.sin(angle), np.cos(angle)]
    columns = np.column_stack(cols) if cols else np.empty((int(length), 0))
    return FourierTerms(columns=columns, periods=periods)


def extend_fourier(terms, horizon):
    """The next ``horizon`` rows of ``terms``, each column continued with its own period."""
    n = terms.columns.shape[0]
    cols = [terms.columns[continuation_index(n, m, horizon), j]
            for j, m in enumerate(terms.column_periods)]
    columns = np.column_stack(cols) if cols else np.empty((horizon, 0))
    return FourierTerms(columns=columns, periods=terms.periods)
