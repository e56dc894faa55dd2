import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telescope.decomposition import (
    continuation_index, continue_season, extend_fourier, fourier_terms, stl,
)
from telescope.exceptions import PeriodTooLargeForSeries


def test_ramp_has_no_season():
    y = 2.0 * np.arange(24)
    dec = stl(y, 4)
    assert np.max(np.abs(dec.season)) < 1e-6
    np.testing.assert_allclose(dec.trend, y, atol=1e-6)


def test_known_pattern_recovered():
    pattern = np.array([3.0, -1.0, -1.0, -1.0])
    t = np.arange(40)
    y = t + pattern[t % 4]
    dec = stl(y, 4)
    np.testing.assert_allclose(dec.season[:4], pattern, atol=1e-3)
    assert np.max(np.abs(dec.trend[4:-4] - t[4:-4])) < 0.2


def test_constant():
    dec = stl(np.full(12, 5.0), 3)
    np.testing.assert_allclose(dec.trend, 5.0, atol=1e-9)
    np.testing.assert_allclose(dec.season, 0.0, atol=1e-9)
    np.testing.assert_allclose(dec.irregular, 0.0, atol=1e-9)


def test_period_too_large():
    with pytest.raises(PeriodTooLargeForSeries):
        stl(np.arange(10.0), 6)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 13), st.integers(2, 8), st.integers(0, 2**32 - 1))
def test_additivity_and_periodicity(period, cycles, seed):
    rng = np.random.default_rng(seed)
    n = period * cycles + int(rng.integers(0, period))
    y = rng.normal(size=n).cumsum() + rng.normal(size=period)[np.arange(n) % period]
    dec = stl(y, period)
    np.testing.assert_allclose(dec.trend + dec.season + dec.irregular, y, atol=1e-8)
    np.testing.assert_allclose(dec.season[period:], dec.season[:-period], atol=1e-9)
    assert abs(dec.season[:period].sum()) < 1e-6


def test_fourier_terms():
    f = fourier_terms(4, [4])
    np.testing.assert_allclose(f.columns[:, 0], [0, 1, 0, -1], atol=1e-12)
    np.testing.assert_allclose(f.columns[:, 1], [1, 0, -1, 0], atol=1e-12)
    assert f.names == ["sin_4", "cos_4"]
    np.testing.assert_allclose(fourier_terms(1, [2, 3]).columns, [[0, 1, 0, 1]], atol=1e-12)
    g = fourier_terms(50, [7])
    np.testing.assert_allclose(g.columns[7:], g.columns[:-7], atol=1e-12)


def test_extend_fourier():
    f = fourier_terms(8, [4])
    assert continuation_index(8, 4, 1).tolist() == [4]
    np.testing.assert_allclose(extend_fourier(f, 1).columns, f.columns[[4]])
    np.testing.assert_allclose(extend_fourier(f, 4).columns, f.columns[4:8])
    np.testing.assert_allclose(extend_fourier(f, 9).columns, f.columns[[4, 5, 6, 7, 4, 5, 6, 7, 4]])


def test_continue_season():
    s = np.array([1, 2, 3, 1, 2, 3], float)
    assert continue_season(s, 3, 3).tolist() == [1, 2, 3]
    assert continue_season(s, 3, 1).tolist() == [1]
    assert continue_season(s, 3, 7).tolist() == [1, 2, 3, 1, 2, 3, 1]


def test_to_csv_layout():
    y = np.arange(8.0) + np.tile([1.0, -1.0], 4)
    lines = stl(y, 2).to_csv(y).splitlines()
    assert lines[0] == "value,trend,season,irregular"
    assert len(lines) == 9
