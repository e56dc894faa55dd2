"""Periodogram and dominant seasonal period detection."""

from dataclasses import dataclass

import numpy as np

from .exceptions import TooShort
from .timeseries import validate

POWER_FRACTION = 0.5
MEDIAN_RATIO = 10.0
MAX_COUNT = 3
ALPHA = 0.01


@dataclass(frozen=True)
class Periodogram:
    frequencies: np.ndarray
    power: np.ndarray

    def to_csv(self):
        rows = [f"{f!r},{p!r}" for f, p in zip(self.frequencies.tolist(), self.power.tolist())]
        return "frequency,power\n" + "\n".join(rows) + "\n"


def periodogram(values):
    """
    Classical periodogram of the mean-removed series.

    Power is ``|DFT_k|**2 / n`` at the Fourier frequencies ``k / n`` for
    ``k = 1 .. n // 2``.
    """
    x = validate(values)
    n = x.size
    if n < 4:
        raise TooShort(f"periodogram needs at least 4 observations, got {n}")
    x = x - x.mean()
    spec = np.fft.rfft(x)
    k = np.arange(1, n // 2 + 1)
    power = np.abs(spec[k]) ** 2 / n
    return Periodogram(frequencies=k / n, power=power)


def local_peaks(power):
    """Indices of bins at least as large as both neighbours."""
    p = np.asarray(power)
    left = np.concatenate(([-np.inf], p[:-1]))
    right = np.concatenate((p[1:], [-np.inf]))
    return np.flatnonzero((p >= left) & (p >= right))


def white_noise_bound(median_power, bins, alpha=ALPHA):
    """
    Power that the largest of ``bins`` white-noise bins exceeds with
    probability ``alpha``.

    White-noise periodogram ordinates are roughly exponential; their mean is
    estimated robustly from the median.
    """
    mean = median_power / np.log(2.0)
    return -mean * np.log(-np.expm1(np.log1p(-alpha) / bins))


def refine_period(resid, k):
    """
    Integer period near Fourier bin ``k`` with the largest power at its own
    frequency ``1 / m``.

    Bin ``k`` of an ``n``-long series covers periods between
    ``n / (k + 0.5)`` and ``n / (k - 0.5)``; unless ``n`` is a multiple of
    the true period, ``round(n / k)`` misses it.
    """
    n = resid.size
    lo = max(2, int(np.ceil(n / (k + 0.5))))
    hi = min(n // 2, int(np.floor(n / (k - 0.5)))) if k > 0.5 else n // 2
    candidates = np.arange(lo, hi + 1)
    if candidates.size <= 1:
        return int(round(n / k))
    t = np.arange(n)
    phase = np.exp(-2j * np.pi * np.outer(1.0 / candidates, t))
    power = np.abs(phase @ resid) ** 2
    # ties keep the candidate closest to the bin centre
    order = np.argsort(np.abs(candidates - n / k), kind="stable")
    return int(candidates[order][np.argmax(power[order])])


def dominant_frequencies(values, max_count=MAX_COUNT, power_fraction=POWER_FRACTION,
                         median_ratio=MEDIAN_RATIO, alpha=ALPHA):
    """
    Most dominant seasonal periods, strongest first.

    The periodogram is taken of the series minus its least-squares line so a
    trend does not swamp the low frequencies, and only bins whose period
    ``round(1 / f)`` lies in ``[2, n // 2]`` compete. A peak qualifies when
    its power reaches ``power_fraction`` of the strongest admissible bin and
    that bin exceeds both ``median_ratio`` times the median power and the
    level white noise would reach with probability ``alpha``. Each peak is
    then refined to the best integer period within its bin. ``[1]`` means
    the series is non-seasonal.
    """
    if max_count < 1:
        raise ValueError("max_count must be >= 1")
    x = validate(values)
    n = x.size
    if n < 4:
        return [1]
    t = np.arange(n, dtype=float)
    slope, intercept = np.polyfit(t, x, 1)
    resid = x - (intercept + slope * t)
    if np.std(resid) <= 1e-10 * max(1.0, float(np.max(np.abs(x)))):
        return [1]
    pg = periodogram(resid)
    power = pg.power
    period = np.round(1.0 / pg.frequencies).astype(int)
    admissible = (period >= 2) & (period <= n // 2)
    if not admissible.any():
        return [1]
    top = power[admissible].max()
    median = np.median(power)
    if not top > 0 or top < median_ratio * median \
            or top < white_noise_bound(median, power.size, alpha):
        return [1]
    peaks = local_peaks(power)
    peaks = peaks[admissible[peaks] & (power[peaks] >= power_fraction * top)]
    # strongest first; stable sort keeps low frequencies first on ties
    peaks = peaks[np.argsort(-power[peaks], kind="stable")]
    periods = []
    for idx in peaks:
        m = refine_period(resid, idx + 1)
        if 2 <= m <= n // 2 and m not in periods:
            periods.append(m)
        if len(periods) == max_count:
            break
    return periods or [1]
