"""
Forecasting a seasonal series
=============================

A monthly-looking series with a linear trend, a yearly cycle and noise is
forecast two cycles ahead, and the forecast is compared with the process
that generated it.
"""

import numpy as np

from telescope import forecast, smape

rng = np.random.default_rng(42)
t = np.arange(144)
clean = 50 + 0.4 * t + 8 * np.sin(2 * np.pi * t / 12)
observed = clean + rng.normal(0, 0.8, t.size)

# hold back the last 24 points
history, future = observed[:120], clean[120:]
result = forecast(history, horizon=24, seed=0)

print("detected periods:", result.frequencies)
print("Box-Cox lambda:  ", result.lam)
print("learner:         ", result.regressor_used)
print("sMAPE vs truth:   %.2f%%" % smape(future, result.forecast))

# the forecast is the sum of an ARIMA trend and the learner's season
for name, part in result.component_forecasts.items():
    print(f"{name:>10}: {np.round(part[:4], 3)} ...")

# without a dominant period the whole series goes to ARIMA
noise = rng.normal(20, 1, 100)
print("white noise ->", forecast(noise, 5).regressor_used)
