"""
Benchmarking against baselines
==============================

The harness trains on the first 80% of each series, forecasts the rest,
repeats every run to time it, and reports errors, naive-normalised times,
quadrants and Friedman ranks.
"""

import numpy as np

from telescope import benchmark, forecast
from telescope.synth import trend_season_noise

rng = np.random.default_rng(1)
series = {f"s{i:02d}": trend_season_noise(rng)[0] for i in range(12)}

methods = {
    "telescope": lambda y, h: forecast(y, h).forecast,
    "naive": benchmark.naive_forecast,
    "seasonal-naive": benchmark.seasonal_naive_forecast,
}
report = benchmark.run(series, methods, benchmark.EvalProtocol(repetitions=3))

for method in report.methods:
    s = report.method_stats(method)
    print(f"{method:>15}: sMAPE {s['e_mean']:6.2f}%  t_N {s['t_median']:9.1f}  "
          f"quadrants {report.quadrants[method]}")

fr = report.friedman_error
print("Friedman on errors: ranks", np.round(fr.mean_ranks, 2),
      "chi2 %.2f  p %.3g" % (fr.statistic, fr.pvalue))
