"""
Characteristics of a de-trended series used to predict which learner will
forecast it best.

Twenty attributes are computed: basic statistics (``s*``), period-wise
regularity measures (``b*``), spectral landmarks (``l*``) and structural
measures (``w*``). Degenerate inputs map to fixed sentinel values so every
attribute is always finite.
"""

from dataclasses import astuple, dataclass, fields

import numpy as np
from scipy import stats

from .decomposition import stl
from .spectral import dominant_frequencies, local_peaks, periodogram
from .timeseries import validate

PEAK_FRACTION = 0.6
APEN_ORDER = 2
APEN_TOLERANCE = 0.2


@dataclass(frozen=True)
class MetaAttributes:
    s1_frequency: float
    s2_length: float
    s3_std_dev: float
    s4_skewness: float
    s5_irregular_skewness: float
    s6_irregular_kurtosis: float
    b1_mean_period_entropy: float
    b2_entropy_cv: float
    b3_mean_cosine_similarity: float
    b4_sinus_approx_dw: float
    l1_second_frequency: float
    l2_third_frequency: float
    l3_max_spectral_value: float
    l4_peak_count: float
    w1_seasonal_strength: float
    w2_serial_correlation: float
    w3_irregular_serial_correlation: float
    w4_nonlinearity: float
    w5_irregular_nonlinearity: float
    w6_self_similarity: float

    def as_array(self):
        return np.array(astuple(self), dtype=float)


ATTRIBUTE_NAMES = [f.name for f in fields(MetaAttributes)]


def _finite(x, default=0.0):
    x = float(x)
    return x if np.isfinite(x) else default


def _flat(x):
    return np.std(x) <= 1e-12 * max(1.0, float(np.max(np.abs(x))))


def skewness(x):
    if x.size < 3 or _flat(x):
        return 0.0
    return _finite(stats.skew(x, bias=False))


def excess_kurtosis(x):
    if x.size < 4 or _flat(x):
        return 0.0
    return _finite(stats.kurtosis(x, fisher=True, bias=False))


def lag1_autocorrelation(x):
    if x.size < 3 or _flat(x):
        return 0.0
    z = x - x.mean()
    return _finite(np.dot(z[1:], z[:-1]) / np.dot(z, z))


def approximate_entropy(u, m=APEN_ORDER, r=None):
    """Pincus' approximate entropy with embedding ``m`` and tolerance ``r``."""
    u = np.asarray(u, dtype=float)
    n = u.size
    if n < m + 2:
        return 0.0
    if r is None:
        r = APEN_TOLERANCE * np.std(u)

    def phi(k):
        emb = np.lib.stride_tricks.sliding_window_view(u, k)
        dist = np.max(np.abs(emb[:, None, :] - emb[None, :, :]), axis=2)
        counts = np.mean(dist <= r, axis=1)
        return np.mean(np.log(counts))

    return _finite(phi(m) - phi(m + 1))


def full_periods(x, period):
    k = x.size // period
    return x[:k * period].reshape(k, period)


def mean_cosine_similarity(segments):
    norms = np.linalg.norm(segments, axis=1)
    iu = np.triu_indices(segments.shape[0], k=1)
    if iu[0].size == 0:
        return 0.0
    gram = segments @ segments.T
    denom = np.outer(norms, norms)
    sims = np.divide(gram, denom, out=np.zeros_like(gram), where=denom > 0)
    return float(np.clip(sims[iu].mean(), -1.0, 1.0))


def sine_fit_durbin_watson(x, period):
    """Durbin-Watson statistic of residuals from a least-squares sine at ``period``."""
    t = np.arange(x.size)
    angle = 2.0 * np.pi * (t % period) / period
    design = np.column_stack([np.ones(x.size), np.sin(angle), np.cos(angle)])
    coef, *_ = np.linalg.lstsq(design, x, rcond=None)
    e = x - design @ coef
    sse = float(np.dot(e, e))
    if sse <= 1e-20 * max(1.0, float(np.dot(x - x.mean(), x - x.mean()))):
        return 2.0
    return float(np.sum(np.diff(e) ** 2) / sse)


def nonlinearity(x):
    """
    F statistic for adding squared and cubed lag terms to a linear AR(1)
    regression; 0 when the test is undefined.
    """
    if x.size < 8 or _flat(x):
        return 0.0
    y, lag = x[1:], x[:-1]
    sd = lag.std()
    if sd == 0:
        return 0.0
    u = (lag - lag.mean()) / sd
    ones = np.ones_like(u)
    restricted = np.column_stack([ones, u])
    full = np.column_stack([ones, u, u ** 2, u ** 3])

    def ssr(design):
        coef, *_ = np.linalg.lstsq(design, y, rcond=None)
        r = y - design @ coef
        return float(np.dot(r, r))

    ssr_r, ssr_u = ssr(restricted), ssr(full)
    dof = y.size - full.shape[1]
    if ssr_u <= 1e-12 * max(ssr_r, 1e-300) or dof <= 0:
        return 0.0
    return _finite(max(ssr_r - ssr_u, 0.0) / 2.0 / (ssr_u / dof))


def hurst_exponent(x, min_window=8):
    """
    Rescaled-range estimate of the Hurst exponent.

    Window sizes double from ``min_window`` up to half the series; with fewer
    than two usable sizes the uninformative value 0.5 is returned.
    """
    sizes = []
    w = min_window
    while w <= x.size // 2:
        sizes.append(w)
        w *= 2
    logs_w, logs_rs = [], []
    for w in sizes:
        segs = full_periods(x, w)
        dev = np.cumsum(segs - segs.mean(axis=1, keepdims=True), axis=1)
        r = dev.max(axis=1) - dev.min(axis=1)
        s = segs.std(axis=1)
        ok = s > 0
        if ok.any():
            logs_w.append(np.log(w))
            logs_rs.append(np.log(np.mean(r[ok] / s[ok])))
    if len(logs_w) < 2:
        return 0.5
    slope = np.polyfit(logs_w, logs_rs, 1)[0]
    return _finite(slope, 0.5)


def extract_meta_attributes(values):
    """Compute all twenty attributes of a de-trended series."""
    x = validate(values)
    n = x.size
    periods = dominant_frequencies(x) if n >= 4 else [1]
    seasonal = periods[0] > 1 and n >= 2 * periods[0]
    m = periods[0] if seasonal else 1
    if seasonal:
        dec = stl(x, m)
        season, irregular = dec.season, dec.irregular
    else:
        season, irregular = np.zeros(n), x

    if n >= 4:
        power = periodogram(x).power
        top = float(power.max())
        l3 = top
        l4 = 1 if top <= 0 else max(1, int(np.sum(power[local_peaks(power)] >= PEAK_FRACTION * top)))
    else:
        l3, l4 = 0.0, 1

    if seasonal:
        segs = full_periods(x, m)
        ent = np.array([approximate_entropy(s, r=APEN_TOLERANCE * np.std(s)) for s in segs])
        b1 = float(ent.mean())
        b2 = float(ent.std(ddof=1) / b1) if b1 != 0 and ent.size > 1 else 0.0
        b3 = mean_cosine_similarity(segs)
        b4 = sine_fit_durbin_watson(x, m)
        total = np.var(season + irregular)
        w1 = max(0.0, 1.0 - np.var(irregular) / total) if total > 0 else 0.0
    else:
        b1 = b2 = b3 = 0.0
        b4 = 2.0
        w1 = 0.0

    padded = list(periods) + [1, 1]
    return MetaAttributes(
        s1_frequency=float(m),
        s2_length=float(n),
        s3_std_dev=float(np.std(x, ddof=1)) if n > 1 else 0.0,
        s4_skewness=skewness(x),
        s5_irregular_skewness=skewness(irregular),
        s6_irregular_kurtosis=excess_kurtosis(irregular),
        b1_mean_period_entropy=_finite(b1),
        b2_entropy_cv=_finite(b2),
        b3_mean_cosine_similarity=b3,
        b4_sinus_approx_dw=_finite(b4, 2.0),
        l1_second_frequency=float(padded[1]) if seasonal else 1.0,
        l2_third_frequency=float(padded[2]) if seasonal else 1.0,
        l3_max_spectral_value=l3,
        l4_peak_count=float(l4),
        w1_seasonal_strength=float(min(w1, 1.0)),
        w2_serial_correlation=lag1_autocorrelation(x),
        w3_irregular_serial_correlation=lag1_autocorrelation(irregular),
        w4_nonlinearity=nonlinearity(x),
        w5_irregular_nonlinearity=nonlinearity(irregular),
        w6_self_similarity=hurst_exponent(x),
    )
