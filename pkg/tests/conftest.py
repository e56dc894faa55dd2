import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def seasonal_series(n=120, period=12, slope=0.5, amp=3.0, level=10.0):
    t = np.arange(n)
    return level + slope * t + amp * np.sin(2 * np.pi * t / period)


ACCEPTANCE = []


def record(criterion, passed, detail):
    """Collect one acceptance verdict for the terminal summary."""
    line = f"criterion {criterion:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE.append((criterion, line))
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE):
        terminalreporter.write_line(line)
