"""Seeded synthetic series for demos, tests and the bundled corpus."""

from pathlib import Path

import numpy as np

from .timeseries import write_csv

PERIODS = (4, 7, 12, 24, 52)


def seasonal_pattern(rng, period, amplitude):
    """A smooth random pattern of one period with peak amplitude ``amplitude``."""
    phase = 2.0 * np.pi * np.arange(period) / period
    pattern = np.sin(phase + rng.uniform(0, 2 * np.pi))
    if period >= 4:
        pattern += rng.uniform(0, 0.5) * np.sin(2 * phase + rng.uniform(0, 2 * np.pi))
    pattern -= pattern.mean()
    return amplitude * pattern / np.max(np.abs(pattern))


def sine_plus_noise(rng, period, cycles, snr=4.0):
    """Sine of the given period with white noise at signal-to-noise power ratio ``snr``."""
    n = period * cycles
    amp = rng.uniform(1.0, 10.0)
    sd = amp / np.sqrt(2.0 * snr)
    t = np.arange(n)
    return amp * np.sin(2 * np.pi * t / period + rng.uniform(0, 2 * np.pi)) + rng.normal(0, sd, n)


def trend_season_noise(rng, period=None, cycles=None, noise_ratio=0.1):
    """
    Linear trend plus periodic pattern plus white noise.

    Returns ``(observed, clean)``; the noise standard deviation is
    ``noise_ratio`` times the seasonal amplitude.
    """
    period = int(rng.choice(PERIODS)) if period is None else period
    cycles = int(rng.integers(6, 11)) if cycles is None else cycles
    n = period * cycles
    amp = rng.uniform(5.0, 20.0)
    level = rng.uniform(80.0, 200.0)
    slope = rng.uniform(-0.5, 1.0) * amp / n
    t = np.arange(n)
    pattern = seasonal_pattern(rng, period, amp)
    clean = level + slope * t + pattern[t % period]
    observed = clean + rng.normal(0.0, noise_ratio * amp, n)
    return observed, clean


def write_corpus(directory, count=10, seed=0, prefix="series"):
    """Write ``count`` trend+season+noise series as CSV files; returns their paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    paths = []
    for i in range(count):
        observed, _ = trend_season_noise(rng)
        path = directory / f"{prefix}_{i:03d}.csv"
        write_csv(path, observed)
        paths.append(path)
    return paths
