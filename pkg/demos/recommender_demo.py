"""
Choosing a learner per series
=============================

A small recommender is trained on a synthetic corpus: every series is
forecast with all three tree learners, and a random forest per learner
learns how much worse than the best that learner tends to be, given the
series' characteristics.
"""

import numpy as np

from telescope import extract_meta_attributes, forecast, recommend, train_recommender
from telescope.pipeline import prepare
from telescope.recommender import evaluate_base_methods
from telescope.synth import trend_season_noise

rng = np.random.default_rng(0)
corpus = [trend_season_noise(rng)[0] for _ in range(8)]

# augment to 24 series by recombining trends, seasons and remainders
model = train_recommender(corpus, augment_to=24, seed=0)
print("trained on", model.provenance["rows"], "series")

new, _ = trend_season_noise(rng, period=12, cycles=8)
# attributes are computed on the transformed, de-trended series
attrs = extract_meta_attributes(prepare(new).detrended)
print("seasonal strength %.2f, period %d" % (attrs.w1_seasonal_strength, attrs.s1_frequency))

print("recommended learner:", recommend(model, new))
theta = evaluate_base_methods(new).theta
print("oracle degradation:  ", ", ".join(f"{k} {v:.3f}" for k, v in zip(("cart", "rf", "gb"), theta)))

result = forecast(new, 12, mode="recommended", recommender=model)
print("forecast used:", result.regressor_used)
