"""Tunable settings and the ``key=value`` configuration file format."""

from dataclasses import dataclass, field, replace
from pathlib import Path

from .exceptions import DataError
from .regressors import DEFAULTS, KINDS, resolve_params
from .spectral import ALPHA, MAX_COUNT, MEDIAN_RATIO, POWER_FRACTION


@dataclass(frozen=True)
class Settings:
    """
    Knobs shared by the pipeline, the recommender and the benchmark.

    ``regressor_params`` maps a regressor kind to hyperparameter overrides.
    """

    max_count: int = MAX_COUNT
    power_fraction: float = POWER_FRACTION
    median_ratio: float = MEDIAN_RATIO
    alpha: float = ALPHA
    regressor_params: dict = field(default_factory=dict)

    def params_for(self, kind):
        return resolve_params(kind, self.regressor_params.get(kind))


def parse_config(text, source="<config>"):
    """
    Parse ``key=value`` lines into :class:`Settings`.

    Keys are ``max_count``, ``power_fraction``, ``median_ratio``, ``alpha`` or
    ``<kind>.<hyperparameter>`` such as ``gradient_boosting.rounds``.
    """
    casts = {"max_count": int, "power_fraction": float, "median_ratio": float, "alpha": float}
    values, params = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataError(f"{source}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        kind, _, name = key.partition(".")
        if key in casts:
            cast = casts[key]
        elif kind in KINDS and name in DEFAULTS[kind]:
            cast = type(DEFAULTS[kind][name])
        else:
            raise DataError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            number = float(val)
            if cast is int and not number.is_integer():
                raise ValueError(val)
            number = cast(number)
        except ValueError as exc:
            raise DataError(f"{source}:{lineno}: bad value for {key}: {val!r}") from exc
        if key in casts:
            values[key] = number
        else:
            params.setdefault(kind, {})[name] = number
    return replace(Settings(), regressor_params=params, **values)


def load_config(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    return parse_config(text, source=str(path))
