import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telescope.exceptions import DataError, EmptySeries, NonFinite, NonPositiveValue
from telescope.timeseries import (
    LAMBDA_GRID, TransformState, boxcox, estimate_lambda_guerrero, guerrero_objective,
    inv_boxcox, read_csv, shift_positive, validate, write_csv,
)


def test_validate():
    assert validate([1.0, 2.0, 3.0]).tolist() == [1.0, 2.0, 3.0]
    with pytest.raises(EmptySeries):
        validate([])
    with pytest.raises(NonFinite) as err:
        validate([1.0, float("nan")])
    assert err.value.index == 1


@pytest.mark.parametrize("raw, shifted, shift", [
    ([1, 2, 3], [1, 2, 3], 0),
    ([0, 5], [1, 6], 1),
    ([-2, 0, 3], [1, 3, 6], 3),
])
def test_shift_positive(raw, shifted, shift):
    out, s = shift_positive(raw)
    assert out.tolist() == shifted
    assert s == shift


def test_boxcox_values():
    assert boxcox([math.e], 0)[0] == pytest.approx(1.0)
    assert boxcox([5.0], 1)[0] == 4.0
    assert boxcox([4.0], 0.5)[0] == pytest.approx(2.0)
    assert inv_boxcox([1.0], 0)[0] == pytest.approx(math.e)
    assert inv_boxcox([4.0], 1)[0] == 5.0
    x = np.array([0.5, 7, 19])
    np.testing.assert_allclose(inv_boxcox(boxcox(x, 0.3), 0.3), x, rtol=1e-9)


def test_boxcox_rejects_non_positive():
    with pytest.raises(NonPositiveValue):
        boxcox([1.0, 0.0], 0.5)


def test_inverse_is_clamped():
    # below the domain of the inverse at lambda = 1
    assert inv_boxcox([-5.0], 1.0)[0] > 0
    assert np.isfinite(inv_boxcox([1e6], 0.0)[0])


def brute_force_lambda(x, freq):
    scores = [guerrero_objective(x, lam, freq) for lam in LAMBDA_GRID]
    return LAMBDA_GRID[int(np.argmin(scores))]


def test_guerrero_near_constant():
    x = np.tile([10, 10.1, 9.9], 8)
    lam = estimate_lambda_guerrero(x, 4)
    assert lam == brute_force_lambda(x, 4)
    assert abs(lam - 1) <= 0.05


def test_guerrero_exponential_growth():
    x = np.exp(0.1 * np.arange(48))
    lam = estimate_lambda_guerrero(x, 12)
    assert lam == brute_force_lambda(x, 12)
    assert lam <= 0.05


def test_guerrero_short_series():
    assert estimate_lambda_guerrero([1.0, 2.0, 3.0], 4) == 1.0


def test_transform_state_round_trip():
    state = TransformState(0.5, 3.0)
    x = np.array([-2.0, 0.0, 4.5])
    np.testing.assert_allclose(state.inverse(state.forward(x)), x, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(1e-3, 1e6), min_size=1, max_size=30),
       st.sampled_from([0.0, 0.25, 0.5, 1.0, 2.0]))
def test_round_trip_property(values, lam):
    x = np.array(values)
    np.testing.assert_allclose(inv_boxcox(boxcox(x, lam), lam), x, rtol=1e-9)


def test_csv_round_trip(tmp_path):
    path = tmp_path / "s.csv"
    write_csv(path, [1.5, 2.0, -3.25])
    assert read_csv(path).tolist() == [1.5, 2.0, -3.25]


def test_read_csv_header_comments_and_errors(tmp_path):
    path = tmp_path / "s.csv"
    path.write_text("# exported\ntime,value\n0,1\n\n1,2.5\n")
    assert read_csv(path).tolist() == [1.0, 2.5]
    path.write_text("1\nabc\n")
    with pytest.raises(DataError, match=r"s\.csv:2"):
        read_csv(path)
    with pytest.raises(DataError, match="missing.csv"):
        read_csv(tmp_path / "missing.csv")
