"""
Forecast benchmark: 80/20 multi-step split, repeated timed runs, sMAPE,
naive-normalised time-to-result, error/time quadrants and Friedman ranks.
"""

import csv
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy import stats

from .exceptions import LengthMismatch
from .spectral import dominant_frequencies
from .timeseries import validate

QUADRANTS = ("QI", "QII", "QIII", "QIV")


@dataclass(frozen=True)
class EvalProtocol:
    history_fraction: float = 0.8
    repetitions: int = 10
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.history_fraction < 1:
            raise ValueError("history_fraction must lie in (0, 1)")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")

    def split(self, n):
        cut = min(max(1, int(np.floor(n * self.history_fraction))), n - 1)
        return cut


def smape(actual, forecast):
    """
    Symmetric MAPE in percent: ``200 / n * sum |y - f| / (y + f)``.

    A term with ``y == f == 0`` contributes 0; a term with ``y + f == 0`` but
    ``y != f`` is undefined and is skipped with a warning.
    """
    y = np.asarray(actual, dtype=float).ravel()
    f = np.asarray(forecast, dtype=float).ravel()
    if y.size != f.size:
        raise LengthMismatch(f"actual has {y.size} values, forecast {f.size}")
    if y.size == 0:
        raise LengthMismatch("sMAPE of empty series")
    denom = y + f
    num = np.abs(y - f)
    both_zero = (y == 0) & (f == 0)
    undefined = (denom == 0) & ~both_zero
    if undefined.any():
        warnings.warn(f"sMAPE: skipped {int(undefined.sum())} term(s) with y + f == 0",
                      RuntimeWarning, stacklevel=2)
    keep = ~undefined
    if not keep.any():
        return float("nan")
    terms = np.where(both_zero, 0.0, num / np.where(denom == 0, 1.0, denom))
    return float(200.0 * np.mean(np.abs(terms[keep])))


def naive_forecast(values, horizon):
    """Repeat the last observation."""
    y = validate(values)
    return np.full(int(horizon), y[-1])


def seasonal_naive_forecast(values, horizon, period=None):
    """Repeat the last full period; ``period=None`` detects it, 1 means naive."""
    y = validate(values)
    if period is None:
        period = dominant_frequencies(y)[0]
    if period <= 1 or y.size < period:
        return naive_forecast(y, horizon)
    k = np.arange(int(horizon))
    return y[y.size - period + k % period]


def quadrant(t_n, error, t_median, e_median):
    """Trade-off class with closed lower bounds at the medians."""
    slow, bad = t_n >= t_median, error >= e_median
    if slow and bad:
        return "QI"
    if bad:
        return "QII"
    if not slow:
        return "QIII"
    return "QIV"


@dataclass
class FriedmanResult:
    mean_ranks: np.ndarray
    rank_sums: np.ndarray
    statistic: float
    pvalue: float


def friedman(scores):
    """
    Friedman test on an ``(N series, k methods)`` score matrix (lower is
    better). Ties share their average rank; NaN counts as worst.
    """
    s = np.asarray(scores, dtype=float)
    s = np.where(np.isnan(s), np.inf, s)
    n, k = s.shape
    ranks = np.vstack([stats.rankdata(row) for row in s])
    mean_ranks = ranks.mean(axis=0)
    stat = 12.0 * n / (k * (k + 1)) * np.sum((mean_ranks - (k + 1) / 2.0) ** 2)
    pvalue = float(stats.chi2.sf(stat, k - 1)) if k > 1 else 1.0
    return FriedmanResult(mean_ranks, ranks.sum(axis=0), float(stat), pvalue)


@dataclass
class BenchmarkReport:
    methods: list
    series: list
    cells: list
    summary: dict
    e_median: float
    t_median: float
    quadrants: dict
    friedman_error: FriedmanResult
    friedman_time: FriedmanResult
    failures: list = field(default_factory=list)

    def cell_rows(self):
        header = ["series", "method", "rep", "smape", "seconds", "t_N"]
        return header, [[c[h] for h in header] for c in self.cells]

    def summary_rows(self, timing=True):
        """Measures by method, laid out like a results table."""
        header = ["measure"] + self.methods
        measures = [("e_mean", "mean sMAPE [%]"), ("e_sd", "sd sMAPE [%]"),
                    ("e_median", "median sMAPE [%]")]
        if timing:
            measures += [("t_mean", "mean t_N"), ("t_sd", "sd t_N"), ("t_median", "median t_N")]
        rows = []
        for key, label in measures:
            rows.append([label] + [self.method_stats(m)[key] for m in self.methods])
        return header, rows

    def method_stats(self, method):
        e = np.array([self.summary[(s, method)]["e_mean"] for s in self.series])
        t = np.array([self.summary[(s, method)]["t_n"] for s in self.series])
        def sd(v):
            with np.errstate(invalid="ignore"):  # failed cells carry inf
                return float(np.std(v, ddof=1)) if v.size > 1 else 0.0
        return {"e_mean": float(np.mean(e)), "e_sd": sd(e), "e_median": float(np.median(e)),
                "t_mean": float(np.mean(t)), "t_sd": sd(t), "t_median": float(np.median(t))}

    def quadrant_rows(self):
        header = ["quadrant"] + self.methods
        total = max(len(self.series), 1)
        rows = [[q] + [f"{100.0 * self.quadrants[m][q] / total:.0f}%" for m in self.methods]
                for q in QUADRANTS]
        return header, rows

    def write(self, directory, timing=True):
        """Write cells.csv, summary.csv, quadrants.csv and friedman.csv."""
        out = Path(directory)
        out.mkdir(parents=True, exist_ok=True)

        def dump(name, header, rows):
            with open(out / name, "w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(header)
                w.writerows(rows)

        header, rows = self.cell_rows()
        if not timing:
            rows = [r[:4] for r in rows]
            header = header[:4]
        dump("cells.csv", header, rows)
        dump("summary.csv", *self.summary_rows(timing))
        if timing:
            dump("quadrants.csv", *self.quadrant_rows())
        fr = [["error", *self.friedman_error.mean_ranks.tolist(),
               self.friedman_error.statistic, self.friedman_error.pvalue]]
        if timing:
            fr.append(["time", *self.friedman_time.mean_ranks.tolist(),
                       self.friedman_time.statistic, self.friedman_time.pvalue])
        dump("friedman.csv", ["measure"] + [f"rank_{m}" for m in self.methods]
             + ["statistic", "pvalue"], fr)


def run(series_set, methods, protocol=None, clock=time.perf_counter):
    """
    Benchmark forecasting methods.

    ``series_set`` maps names to series (a list is numbered). ``methods`` maps
    names to callables ``(history, horizon) -> forecast``. Every cell is
    run ``protocol.repetitions`` times; time-to-result is the method's
    wall time divided by the median wall time of the naive forecast on the
    same series. A failing cell is recorded and placed in QI.
    """
    protocol = protocol or EvalProtocol()
    if not isinstance(series_set, dict):
        series_set = {f"series_{i:03d}": s for i, s in enumerate(series_set)}
    names = list(series_set)
    method_names = list(methods)
    cells, summary, failures = [], {}, []

    for sname in names:
        y = validate(series_set[sname])
        cut = protocol.split(y.size)
        history, test = y[:cut], y[cut:]
        naive_times = []
        for _ in range(protocol.repetitions):
            t0 = clock()
            naive_forecast(history, test.size)
            naive_times.append(clock() - t0)
        base = max(float(np.median(naive_times)), 1e-12)
        for mname in method_names:
            errs, secs = [], []
            for rep in range(protocol.repetitions):
                t0 = clock()
                try:
                    fc = methods[mname](history, test.size)
                    elapsed = clock() - t0
                    err = smape(test, fc)
                except Exception as exc:  # noqa: BLE001 - recorded, not fatal
                    elapsed = clock() - t0
                    err = float("nan")
                    failures.append((sname, mname, rep, f"{type(exc).__name__}: {exc}"))
                errs.append(err)
                secs.append(elapsed)
                cells.append({"series": sname, "method": mname, "rep": rep, "smape": err,
                              "seconds": elapsed, "t_N": max(elapsed, 1e-12) / base})
            errs, secs = np.array(errs), np.array(secs)
            ok = np.isfinite(errs)
            summary[(sname, mname)] = {
                "e_mean": float(errs[ok].mean()) if ok.all() else float("inf"),
                "e_sd": float(errs[ok].std(ddof=1)) if ok.all() and errs.size > 1 else 0.0,
                "t_n": max(float(np.median(secs)), 1e-12) / base,
                "t_sd": float(np.std(np.maximum(secs, 1e-12) / base, ddof=1)) if secs.size > 1 else 0.0,
            }

    e_all = np.array([v["e_mean"] for v in summary.values()])
    t_all = np.array([v["t_n"] for v in summary.values()])
    e_med = float(np.median(e_all[np.isfinite(e_all)])) if np.isfinite(e_all).any() else 0.0
    t_med = float(np.median(t_all))
    tally = {m: dict.fromkeys(QUADRANTS, 0) for m in method_names}
    for (sname, mname), v in summary.items():
        v["quadrant"] = quadrant(v["t_n"], v["e_mean"], t_med, e_med)
        tally[mname][v["quadrant"]] += 1

    err_matrix = [[summary[(s, m)]["e_mean"] for m in method_names] for s in names]
    time_matrix = [[summary[(s, m)]["t_n"] for m in method_names] for s in names]
    return BenchmarkReport(
        methods=method_names, series=names, cells=cells, summary=summary,
        e_median=e_med, t_median=t_med, quadrants=tally,
        friedman_error=friedman(err_matrix), friedman_time=friedman(time_matrix),
        failures=failures,
    )
