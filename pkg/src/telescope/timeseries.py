"""
Series validation, ordinate shifting and Box-Cox transformation.

A time series is a 1-D float array; position is time, so equidistance is
implicit. All functions return new arrays and never modify their inputs.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import EmptySeries, NonFinite, NonPositiveValue, DataError

LAMBDA_GRID = np.round(np.linspace(0.0, 2.0, 201), 10)
INV_FLOOR = 1e-12


@dataclass(frozen=True)
class TransformState:
    """Parameters needed to undo the preprocessing of a series."""

    lam: float = 1.0
    shift: float = 0.0

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"Box-Cox lambda must be >= 0, got {self.lam}")
        if self.shift < 0:
            raise ValueError(f"shift must be >= 0, got {self.shift}")

    def forward(self, values):
        return boxcox(np.asarray(values, dtype=float) + self.shift, self.lam)

    def inverse(self, values):
        return inv_boxcox(values, self.lam) - self.shift


def validate(values):
    """
    Check that ``values`` is a usable series and return it as a float array.

    Raises
    ------
    EmptySeries
        If there are no observations.
    NonFinite
        At the first NaN or infinite observation.
    """
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptySeries()
    bad = np.flatnonzero(~np.isfinite(arr))
    if bad.size:
        raise NonFinite(int(bad[0]))
    return arr


def shift_positive(values):
    """
    Move a series up so that every value is strictly positive.

    Returns ``(shifted, shift)``. When the minimum is already positive the
    series is returned unchanged with ``shift == 0``; otherwise the minimum is
    moved to exactly 1.
    """
    arr = validate(values)
    low = arr.min()
    if low > 0:
        return arr.copy(), 0.0
    shift = 1.0 - low
    out = arr + shift
    # exact minimum of 1 regardless of rounding in the addition
    out[arr == low] = 1.0
    return out, float(shift)


def boxcox(values, lam):
    """Box-Cox transform: log for ``lam == 0``, ``(y**lam - 1) / lam`` otherwise."""
    arr = np.asarray(values, dtype=float)
    bad = np.flatnonzero(~(arr > 0))
    if bad.size:
        raise NonPositiveValue(int(bad[0]))
    if lam == 0:
        return np.log(arr)
    if lam == 1:
        return arr - 1.0
    return np.expm1(lam * np.log(arr)) / lam


def inv_boxcox(values, lam):
    """
    Inverse Box-Cox transform.

    For ``lam > 0`` the base ``lam * w + 1`` is clamped below at 1e-12 so
    overshooting forecasts stay in the domain. Overflow saturates at the
    largest finite float.
    """
    w = np.asarray(values, dtype=float)
    with np.errstate(over="ignore"):
        if lam == 0:
            out = np.exp(w)
        elif lam == 1:
            out = np.maximum(w + 1.0, INV_FLOOR)
        else:
            base = np.maximum(lam * w + 1.0, INV_FLOOR)
            out = np.exp(np.log(base) / lam)
    return np.nan_to_num(out, nan=np.finfo(float).max, posinf=np.finfo(float).max)


def _block_matrix(arr, frequency):
    width = max(int(frequency), 2)
    nblocks = arr.size // width
    if nblocks < 2:
        return None
    # most recent complete blocks
    return arr[arr.size - nblocks * width:].reshape(nblocks, width)


def guerrero_objective(values, lam, frequency):
    """Coefficient of variation of ``sd / mean**(1 - lam)`` across blocks."""
    blocks = _block_matrix(np.asarray(values, dtype=float), frequency)
    if blocks is None:
        return np.inf
    mu = blocks.mean(axis=1)
    sd = blocks.std(axis=1, ddof=1)
    ratio = sd / mu ** (1.0 - lam)
    centre = ratio.mean()
    if not np.isfinite(centre) or centre <= 0:
        return np.inf
    return ratio.std(ddof=1) / centre


def estimate_lambda_guerrero(values, frequency=1):
    """
    Pick the Box-Cox parameter in [0, 2] by Guerrero's criterion.

    The series is cut into non-overlapping blocks of ``max(frequency, 2)``
    observations and the parameter minimising the dispersion of the
    per-block ratio ``sd / mean**(1 - lam)`` is chosen from a 0.01 grid.
    Fewer than two complete blocks, or a flat objective with no dispersion
    at all, yield 1 (no transformation).
    """
    arr = validate(values)
    if np.any(arr <= 0):
        raise NonPositiveValue(int(np.flatnonzero(arr <= 0)[0]))
    blocks = _block_matrix(arr, frequency)
    if blocks is None:
        return 1.0
    mu = blocks.mean(axis=1)
    sd = blocks.std(axis=1, ddof=1)
    if not np.any(sd > 0):
        return 1.0
    # (grid, block) matrix of ratios
    ratio = sd[None, :] / mu[None, :] ** (1.0 - LAMBDA_GRID[:, None])
    cv = ratio.std(axis=1, ddof=1) / ratio.mean(axis=1)
    cv = np.where(np.isfinite(cv), cv, np.inf)
    return float(max(LAMBDA_GRID[int(np.argmin(cv))], 0.0))


def read_csv(path):
    """
    Read a series from ``value`` or ``timestamp,value`` lines.

    Lines starting with ``#`` and blank lines are skipped. A single
    non-numeric first line is treated as a header.
    """
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"{path}: cannot read ({exc.strerror or exc})") from exc
    values = []
    seen_data = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        field = line.split(",")[-1].strip()
        try:
            values.append(float(field))
        except ValueError:
            if not seen_data:
                seen_data = True
                continue
            raise DataError(f"{path}:{lineno}: cannot parse {field!r} as a number")
        seen_data = True
    try:
        return validate(values)
    except NonFinite as exc:
        raise DataError(f"{path}: observation {exc.index} is not finite") from exc
    except EmptySeries as exc:
        raise DataError(f"{path}: no observations") from exc


def format_value(x):
    return repr(float(x))


def write_csv(path, values):
    """Write a single-column series, one value per line."""
    lines = [format_value(v) for v in np.asarray(values, dtype=float).ravel()]
    Path(path).write_text("\n".join(lines) + "\n")
