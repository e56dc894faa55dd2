"""
Non-seasonal ARIMA with automatic order selection.

Models are fitted by conditional sum of squares on the differenced series,
compared by AICc, and searched stepwise over ``p, q <= 5`` after the
differencing order has been fixed by a variance-reduction test.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares
from scipy.signal import lfilter

from .exceptions import TooShort
from .timeseries import validate

MAX_P = 5
MAX_Q = 5
MAX_D = 2
MIN_LENGTH = 10
# differencing is kept only if it shrinks the variance below this fraction
DIFF_VARIANCE_RATIO = 0.25
ROOT_TOL = 1e-6
START_ORDERS = ((2, 2), (1, 1), (0, 0), (1, 0), (0, 1))


@dataclass(frozen=True)
class ArimaOrder:
    p: int
    d: int
    q: int

    def __post_init__(self):
        if not (0 <= self.p <= MAX_P and 0 <= self.d <= MAX_D and 0 <= self.q <= MAX_Q):
            raise ValueError(f"order {self} outside the search box")


@dataclass
class ArimaFit:
    order: ArimaOrder
    ar_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    ma_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    intercept: float = 0.0
    sigma2: float = 1.0
    aicc: float = np.inf
    trace: list = field(default_factory=list)

    def forecast(self, values, horizon):
        return forecast_arima(self, values, horizon)


def difference(values, d):
    """Apply first differencing ``d`` times."""
    x = validate(values)
    if x.size <= d:
        raise TooShort(f"cannot difference {x.size} observations {d} times")
    return np.diff(x, n=d) if d else x.copy()


def select_d(values, ratio=DIFF_VARIANCE_RATIO, max_d=MAX_D):
    """Difference while doing so cuts the variance below ``ratio`` of the current one."""
    current = np.asarray(values, dtype=float)
    d = 0
    while d < max_d and current.size > 2:
        nxt = np.diff(current)
        if not np.var(nxt) < ratio * np.var(current):
            break
        current = nxt
        d += 1
    return d


def _stationary(coeffs, sign):
    """True if all roots of ``1 + sign * sum(c_i z^i)`` lie outside the unit circle."""
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0 or not np.any(c):
        return True
    roots = np.roots(np.r_[sign * c[::-1], 1.0])
    return bool(np.all(np.abs(roots) > 1.0 + ROOT_TOL))


def css_residuals(w, ar, ma, mean):
    """Conditional residuals for ``t >= p`` with pre-sample shocks set to zero."""
    p = len(ar)
    z = w - mean
    u = z[p:].copy()
    for i, phi in enumerate(ar, start=1):
        u -= phi * z[p - i:z.size - i]
    if len(ma):
        return lfilter([1.0], np.r_[1.0, ma], u)
    return u


def _fit_order(w, p, q, with_mean, cond):
    """
    CSS fit of ARMA(p, q) on the (already differenced) series ``w``.

    Squared residuals are summed from index ``cond >= p`` on, so every
    candidate is scored on the same observations.
    """
    n_eff = w.size - cond
    k = p + q + int(with_mean) + 1
    if p > cond or n_eff - k - 1 <= 0:
        return None
    # ordinary least squares gives the AR part exactly and a start for MA
    lags = np.column_stack([w[cond - i:w.size - i] for i in range(1, p + 1)]) if p \
        else np.empty((n_eff, 0))
    design = np.column_stack([np.ones(n_eff), lags]) if with_mean else lags
    if design.shape[1]:
        beta, *_ = np.linalg.lstsq(design, w[cond:], rcond=None)
    else:
        beta = np.zeros(0)
    ar = beta[int(with_mean):]
    const = beta[0] if with_mean else 0.0
    denom = 1.0 - ar.sum()
    mean = const / denom if with_mean and abs(denom) > 1e-8 else (w.mean() if with_mean else 0.0)
    ma = np.zeros(q)
    if q:
        def resid(theta):
            a, m = theta[:p], theta[p:p + q]
            mu = theta[p + q] if with_mean else 0.0
            return css_residuals(w, a, m, mu)[cond - p:]

        start = np.r_[ar, ma, [mean] if with_mean else []]
        try:
            sol = least_squares(resid, start, method="lm", max_nfev=200 * (start.size + 1))
        except (ValueError, np.linalg.LinAlgError):
            return None
        ar, ma = sol.x[:p], sol.x[p:p + q]
        mean = sol.x[p + q] if with_mean else 0.0
    if not (_stationary(ar, -1.0) and _stationary(ma, 1.0)):
        return None
    e = css_residuals(w, ar, ma, mean)[cond - p:]
    if not np.all(np.isfinite(e)):
        return None
    scale = max(1.0, float(np.max(np.abs(w))))
    sigma2 = max(float(np.dot(e, e)) / n_eff, (1e-9 * scale) ** 2)
    loglik = -0.5 * n_eff * (np.log(2.0 * np.pi * sigma2) + 1.0)
    aicc = -2.0 * loglik + 2.0 * k + 2.0 * k * (k + 1) / (n_eff - k - 1)
    return np.asarray(ar, float), np.asarray(ma, float), float(mean), sigma2, float(aicc)


def auto_arima(values, max_p=MAX_P, max_q=MAX_Q):
    """
    Select and fit a non-seasonal ARIMA model.

    Falls back to the differenced mean model ``(0, d, 0)`` when every
    candidate fit fails.
    """
    y = validate(values)
    if y.size < MIN_LENGTH:
        raise TooShort(f"auto_arima needs at least {MIN_LENGTH} observations, got {y.size}")
    d = select_d(y)
    w = difference(y, d)
    with_mean = d <= 1
    # short series get a smaller AR box so enough observations remain
    max_p = min(max_p, w.size // 4)
    cond = max_p
    results = {}
    trace = []

    def evaluate(p, q):
        if (p, q) in results or not (0 <= p <= max_p and 0 <= q <= max_q):
            return
        res = _fit_order(w, p, q, with_mean, cond)
        results[(p, q)] = res
        trace.append(((p, d, q), res[4] if res else np.inf))

    for p, q in START_ORDERS:
        evaluate(p, q)

    def best():
        ok = [(res[4], pq) for pq, res in results.items() if res is not None]
        return min(ok) if ok else None

    current = best()
    while current is not None:
        p0, q0 = current[1]
        for dp in (-1, 0, 1):
            for dq in (-1, 0, 1):
                if dp or dq:
                    evaluate(p0 + dp, q0 + dq)
        nxt = best()
        if nxt[1] == current[1]:
            break
        current = nxt

    if current is None:
        mean = float(w.mean()) if with_mean else 0.0
        e = w - mean
        sigma2 = max(float(np.dot(e, e)) / max(w.size, 1), 1e-300)
        return ArimaFit(ArimaOrder(0, d, 0), intercept=mean, sigma2=sigma2,
                        aicc=np.inf, trace=trace)
    ar, ma, mean, sigma2, aicc = results[current[1]]
    p, q = current[1]
    return ArimaFit(ArimaOrder(p, d, q), ar, ma, mean, sigma2, aicc, trace)


def forecast_arima(fit, values, horizon):
    """
    Iterate the fitted recursion ``horizon`` steps ahead with future shocks
    set to zero, then integrate back to the original scale.
    """
    y = validate(values)
    d = fit.order.d
    levels = [y]
    for _ in range(d):
        levels.append(np.diff(levels[-1]))
    w = levels[-1]
    ar = np.asarray(fit.ar_coeffs, dtype=float)
    ma = np.asarray(fit.ma_coeffs, dtype=float)
    p, q = ar.size, ma.size
    mu = fit.intercept
    if w.size > p:
        e = np.r_[np.zeros(p), css_residuals(w, ar, ma, mu)]
    else:
        e = np.zeros(w.size)
    z = list(w - mu)
    shocks = list(e)
    out = np.empty(horizon)
    for h in range(horizon):
        val = sum(ar[i] * z[-1 - i] for i in range(p) if i < len(z))
        val += sum(ma[j] * shocks[-1 - j] for j in range(q) if j < len(shocks))
        z.append(val)
        shocks.append(0.0)
        out[h] = val + mu
    for level in reversed(levels[:-1]):
        out = level[-1] + np.cumsum(out)
    return out
