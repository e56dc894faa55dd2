"""
Periods, spectrum and decomposition
===================================

The periodogram finds the dominant periods; STL then splits the series into
trend, a strictly periodic season and the remainder.
"""

import numpy as np

from telescope import dominant_frequencies, periodogram, stl

t = np.arange(336)
y = 100 + 0.05 * t + 4 * np.sin(2 * np.pi * t / 24) + 3 * np.sin(2 * np.pi * t / 7)

pg = periodogram(y - y.mean())
top = np.argsort(pg.power)[-3:][::-1]
print("strongest bins (period, power):")
for k in top:
    print(f"  {1 / pg.frequencies[k]:6.1f}  {pg.power[k]:10.1f}")

periods = dominant_frequencies(y)
print("dominant periods:", periods)

dec = stl(y, periods[0])
print("reconstruction error:", np.max(np.abs(dec.trend + dec.season + dec.irregular - y)))
print("season repeats every", dec.period, "steps:",
      np.allclose(dec.season[dec.period:], dec.season[:-dec.period]))
# the weaker period is left in the irregular part for the learner to pick up
print("irregular sd: %.3f" % dec.irregular.std())
