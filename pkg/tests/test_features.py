import numpy as np

from telescope.features import (
    ATTRIBUTE_NAMES, MetaAttributes, approximate_entropy, extract_meta_attributes, hurst_exponent,
)


def test_twenty_attributes():
    assert len(ATTRIBUTE_NAMES) == 20
    attrs = extract_meta_attributes(np.random.default_rng(0).normal(size=100))
    assert isinstance(attrs, MetaAttributes)
    assert attrs.s2_length == 100
    assert attrs.as_array().shape == (20,)


def test_pure_sine():
    t = np.arange(120)
    attrs = extract_meta_attributes(np.sin(2 * np.pi * t / 12))
    assert attrs.s1_frequency == 12
    assert attrs.b3_mean_cosine_similarity > 0.999
    assert attrs.w1_seasonal_strength > 0.99


def test_white_noise_has_weak_season():
    attrs = extract_meta_attributes(np.random.default_rng(1).normal(size=200))
    assert attrs.w1_seasonal_strength < 0.2


def test_invariants_on_varied_inputs():
    rng = np.random.default_rng(2)
    inputs = [np.zeros(10), np.full(30, 2.0), rng.normal(size=7), rng.normal(size=300).cumsum(),
              np.sin(np.arange(64) / 3.0) + rng.normal(0, 0.1, 64)]
    for x in inputs:
        a = extract_meta_attributes(x)
        v = a.as_array()
        assert np.all(np.isfinite(v))
        assert a.l4_peak_count >= 1 and a.l4_peak_count == int(a.l4_peak_count)
        assert -1 <= a.b3_mean_cosine_similarity <= 1
        assert 0 <= a.w1_seasonal_strength <= 1


def test_approximate_entropy_regular_vs_random():
    regular = np.tile([0.0, 1.0], 50)
    noisy = np.random.default_rng(3).normal(size=100)
    assert approximate_entropy(regular) < approximate_entropy(noisy)


def test_hurst_short_series():
    assert hurst_exponent(np.arange(20.0)) == 0.5
