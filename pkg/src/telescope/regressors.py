"""
Regression learners mapping intrinsic features to the de-trended series.

Three tree learners are available, selected by a kind tag:

``cart``
    single tree, cost-complexity pruned by the one-SE rule on 5-fold CV
``random_forest``
    bagged trees with a random third of the features considered per split
``gradient_boosting``
    stagewise trees fitted to squared-loss residuals with shrinkage

Fitted models serialise to JSON text that reloads to bitwise-identical
predictions.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DataError, SchemaMismatch, TooFewRows
from .trees import Binner, Tree, cv_prune, grow_tree

KINDS = ("cart", "random_forest", "gradient_boosting")

DEFAULTS = {
    "cart": {"max_depth": 8, "min_leaf": 2, "folds": 5},
    "random_forest": {"n_trees": 100, "max_depth": 12, "min_leaf": 2},
    "gradient_boosting": {"rounds": 200, "learning_rate": 0.1, "max_depth": 4, "min_leaf": 2},
}
MIN_ROWS = 4


@dataclass
class FeatureMatrix:
    """Named feature columns with an optional regression target."""

    columns: np.ndarray
    names: list
    target: np.ndarray = None

    def __post_init__(self):
        self.columns = np.atleast_2d(np.asarray(self.columns, dtype=float))
        self.names = list(self.names)
        if self.columns.shape[1] != len(self.names):
            raise SchemaMismatch(
                f"{self.columns.shape[1]} columns but {len(self.names)} names")
        if not np.all(np.isfinite(self.columns)):
            raise DataError("feature matrix contains non-finite values")
        if self.target is not None:
            self.target = np.asarray(self.target, dtype=float).ravel()
            if self.target.size != self.rows:
                raise SchemaMismatch(
                    f"target has {self.target.size} values for {self.rows} rows")
            if not np.all(np.isfinite(self.target)):
                raise DataError("target contains non-finite values")

    @property
    def rows(self):
        return self.columns.shape[0]


@dataclass
class FittedModel:
    kind: str
    trees: list
    feature_names: list
    base_score: float = 0.0
    seed: int = 0
    params: dict = field(default_factory=dict)

    def predict(self, features):
        return predict(self, features)

    def staged_predict(self, X):
        """In-sample predictions after each boosting round (gradient boosting only)."""
        out = np.full(np.asarray(X).shape[0], self.base_score)
        yield out.copy()
        for tree in self.trees:
            out = out + tree.predict(X)
            yield out.copy()

    def to_dict(self):
        return {
            "kind": self.kind,
            "seed": self.seed,
            "params": self.params,
            "feature_names": self.feature_names,
            "base_score": self.base_score,
            "trees": [t.to_dict(self.feature_names) for t in self.trees],
        }

    @classmethod
    def from_dict(cls, data):
        names = list(data["feature_names"])
        return cls(
            kind=data["kind"],
            trees=[Tree.from_dict(t, names) for t in data["trees"]],
            feature_names=names,
            base_score=float(data["base_score"]),
            seed=int(data["seed"]),
            params=dict(data["params"]),
        )

    def dumps(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))


def resolve_params(kind, overrides=None):
    if kind not in KINDS:
        raise ValueError(f"unknown regressor kind {kind!r}; expected one of {KINDS}")
    params = dict(DEFAULTS[kind])
    for key, val in (overrides or {}).items():
        if key not in params:
            raise ValueError(f"unknown hyperparameter {key!r} for {kind}")
        params[key] = type(params[key])(val)
    return params


def fit(kind, features, seed=0, params=None):
    """
    Train a learner of the given kind on ``features.target``.

    A constant target yields a model predicting that constant.
    """
    params = resolve_params(kind, params)
    if features.target is None:
        raise DataError("feature matrix has no target")
    if features.rows < MIN_ROWS:
        raise TooFewRows(f"need at least {MIN_ROWS} rows, got {features.rows}")
    X, y = features.columns, features.target
    names = list(features.names)
    if kind == "cart":
        rng = np.random.default_rng(seed)
        tree = cv_prune(X, y, rng, max_depth=params["max_depth"],
                        min_leaf=params["min_leaf"], folds=params["folds"])
        trees, base = [tree], 0.0
    elif kind == "random_forest":
        trees, base = _fit_forest(X, y, seed, **params), 0.0
    else:
        trees, base = _fit_boosting(X, y, **params)
    return FittedModel(kind=kind, trees=trees, feature_names=names, base_score=base,
                       seed=int(seed), params=params)


def _fit_forest(X, y, seed, n_trees, max_depth, min_leaf):
    n, p = X.shape
    binner = Binner(X)
    codes = binner.transform(X)
    mtry = max(1, math.ceil(p / 3))
    trees = []
    for child in np.random.SeedSequence(seed).spawn(n_trees):
        rng = np.random.default_rng(child)
        weights = np.bincount(rng.integers(0, n, size=n), minlength=n).astype(float)
        trees.append(grow_tree(X, y, binner, codes, weights=weights, max_depth=max_depth,
                               min_leaf=min_leaf, max_features=mtry, rng=rng))
    return trees


def _fit_boosting(X, y, rounds, learning_rate, max_depth, min_leaf):
    binner = Binner(X)
    codes = binner.transform(X)
    base = float(np.mean(y))
    current = np.full(y.size, base)
    trees = []
    for _ in range(rounds):
        tree = grow_tree(X, y - current, binner, codes, max_depth=max_depth,
                         min_leaf=min_leaf).scaled(learning_rate)
        if tree.n_leaves == 1:
            break
        trees.append(tree)
        current = current + tree.predict(X)
    return trees, base


def predict(model, features):
    """One prediction per row of ``features``; column names must match training."""
    if isinstance(features, FeatureMatrix):
        if features.names != model.feature_names:
            raise SchemaMismatch(
                f"expected columns {model.feature_names}, got {features.names}")
        X = features.columns
    else:
        X = np.atleast_2d(np.asarray(features, dtype=float))
        if X.shape[1] != len(model.feature_names):
            raise SchemaMismatch(
                f"expected {len(model.feature_names)} columns, got {X.shape[1]}")
    if model.kind == "random_forest":
        return np.mean([t.predict(X) for t in model.trees], axis=0)
    out = np.full(X.shape[0], model.base_score)
    for tree in model.trees:
        out = out + tree.predict(X)
    return out
