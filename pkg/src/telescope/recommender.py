"""
Meta-learning selection of the regression learner.

Offline, a corpus of series is augmented by recombining decomposed
components, every learner is evaluated on an 80/20 split of every series,
and one random forest per learner is trained to predict its forecast
accuracy degradation (its error relative to the best learner on the same
series) from the series' meta-level attributes. Online, the learner with the
lowest predicted degradation is chosen.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import regressors
from .config import Settings
from .decomposition import stl
from .exceptions import EmptyCorpus, RecommenderNotTrained, TelescopeError
from .features import ATTRIBUTE_NAMES, extract_meta_attributes
from .pipeline import forecast_prepared, linear_trend, prepare
from .regressors import KINDS, FeatureMatrix, FittedModel
from .spectral import dominant_frequencies
from .timeseries import validate

FORMAT = "telescope-recommender/1"
HISTORY_FRACTION = 0.8
EPSILON_FLOOR = 1e-9
SCALE_RANGE = (0.5, 2.0)


@dataclass
class DegradationVector:
    kinds: tuple
    epsilon: np.ndarray
    theta: np.ndarray


@dataclass
class RecommenderModel:
    models: dict
    schema: list = field(default_factory=lambda: list(ATTRIBUTE_NAMES))
    provenance: dict = field(default_factory=dict)

    def dumps(self):
        return json.dumps({
            "format": FORMAT,
            "schema": self.schema,
            "provenance": self.provenance,
            "models": {k: m.to_dict() for k, m in self.models.items()},
        }, sort_keys=True)

    @classmethod
    def loads(cls, text):
        data = json.loads(text)
        if data.get("format") != FORMAT:
            raise RecommenderNotTrained(f"not a recommender model (format {data.get('format')!r})")
        return cls(models={k: FittedModel.from_dict(m) for k, m in data["models"].items()},
                   schema=list(data["schema"]), provenance=dict(data["provenance"]))

    def save(self, path):
        with open(path, "w") as fh:
            fh.write(self.dumps())

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.loads(fh.read())


def smape(actual, forecast):
    # imported lazily to keep benchmark -> pipeline -> recommender acyclic
    from .benchmark import smape as _smape
    return _smape(actual, forecast)


def split_point(n, fraction=HISTORY_FRACTION):
    """Number of history observations for an ``n``-long series."""
    return min(max(1, int(np.floor(n * fraction))), n - 1)


def degradation(epsilon):
    """Each error divided by the smallest, after flooring at 1e-9."""
    eps = np.maximum(np.asarray(epsilon, dtype=float), EPSILON_FLOOR)
    return eps / eps.min()


def decompose_member(values):
    """``(trend, season, irregular, period)`` of a corpus member."""
    x = validate(values)
    periods = dominant_frequencies(x)
    if periods[0] > 1:
        dec = stl(x, periods[0])
        return dec.trend, dec.season, dec.irregular, dec.period
    trend = linear_trend(x)
    return trend, np.zeros_like(x), x - trend, 1


def generate_series(corpus, count, seed=0):
    """
    ``count`` new series, each the trend of one member plus the rescaled,
    phase-rotated season of another plus the rescaled irregular part of a
    third, truncated to the shortest of the three.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("cannot generate series from an empty corpus")
    parts = [decompose_member(x) for x in corpus]
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        a, b, c = rng.integers(0, len(parts), size=3)
        scale_s, scale_i = rng.uniform(*SCALE_RANGE, size=2)
        trend, season, irregular = parts[a][0], parts[b][1], parts[c][2]
        period = parts[b][3]
        shift = int(rng.integers(0, period)) if period > 1 else 0
        length = min(trend.size, season.size, irregular.size)
        season = np.roll(season, -shift)
        out.append(trend[:length] + scale_s * season[:length] + scale_i * irregular[:length])
    return out


def evaluate_base_methods(values, seed=0, settings=None, kinds=KINDS):
    """
    sMAPE of every learner on the last 20% of ``values`` after training on
    the first 80%, and the resulting degradation vector. A learner that
    fails is charged the worst error among those that succeeded.
    """
    settings = settings or Settings()
    y = validate(values)
    cut = split_point(y.size)
    history, future = y[:cut], y[cut:]
    prep = prepare(history, settings)
    eps = np.full(len(kinds), np.inf)
    for i, kind in enumerate(kinds):
        try:
            transformed, _, _ = forecast_prepared(prep, future.size, kind, seed, settings)
            eps[i] = smape(future, prep.state.inverse(transformed))
        except (TelescopeError, ValueError, FloatingPointError, np.linalg.LinAlgError):
            continue
    finite = np.isfinite(eps)
    if not finite.any():
        eps[:] = 1.0
    else:
        eps[~finite] = eps[finite].max()
    return DegradationVector(kinds=tuple(kinds), epsilon=eps, theta=degradation(eps))


def _meta_row(job):
    values, seed, settings = job
    y = validate(values)
    attrs = extract_meta_attributes(prepare(y, settings).detrended)
    deg = evaluate_base_methods(y, seed, settings)
    return attrs.as_array(), deg.theta


def meta_dataset(series, seed=0, settings=None, jobs=1):
    """Attribute matrix and degradation matrix (rows in input order)."""
    settings = settings or Settings()
    seeds = np.random.SeedSequence(seed).generate_state(max(len(series), 1))
    work = [(s, int(sd), settings) for s, sd in zip(series, seeds)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_meta_row, work))
    else:
        rows = [_meta_row(w) for w in work]
    attrs = np.array([r[0] for r in rows]).reshape(len(rows), len(ATTRIBUTE_NAMES))
    theta = np.array([r[1] for r in rows]).reshape(len(rows), len(KINDS))
    return attrs, theta


def train(corpus, augment_to=None, seed=0, settings=None, jobs=1, forest_params=None):
    """
    Fit one degradation regressor per learner.

    The corpus is first extended with generated series up to ``augment_to``
    members in total.
    """
    corpus = [validate(x) for x in corpus]
    if not corpus:
        raise EmptyCorpus("training corpus is empty")
    extra = max(0, (augment_to or len(corpus)) - len(corpus))
    extended = corpus + generate_series(corpus, extra, seed)
    attrs, theta = meta_dataset(extended, seed, settings, jobs)
    models = {}
    for j, kind in enumerate(KINDS):
        fm = FeatureMatrix(attrs, ATTRIBUTE_NAMES, theta[:, j])
        models[kind] = regressors.fit("random_forest", fm, seed=seed, params=forest_params)
    provenance = {"corpus_size": len(corpus), "augmented": extra,
                  "rows": len(extended), "seed": int(seed)}
    return RecommenderModel(models=models, provenance=provenance)


def predicted_degradation(model, attributes):
    if model is None or not model.models:
        raise RecommenderNotTrained("recommender model has not been trained")
    row = np.asarray(attributes.as_array() if hasattr(attributes, "as_array") else attributes,
                     dtype=float)[None, :]
    return np.array([regressors.predict(model.models[k], row)[0] for k in KINDS])


def select(theta):
    """Learner with the smallest degradation; ties go to the earlier kind."""
    return KINDS[int(np.argmin(np.asarray(theta, dtype=float)))]


def recommend_prepared(model, prep):
    return select(predicted_degradation(model, extract_meta_attributes(prep.detrended)))


def recommend(model, values, settings=None):
    """Learner expected to forecast ``values`` best."""
    if model is None:
        raise RecommenderNotTrained("recommender model has not been trained")
    return recommend_prepared(model, prepare(values, settings))
