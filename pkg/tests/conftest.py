import numpy as np
import pytest

ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_population(rng, n, m, D=2, levels=None):
    """Random objective/decision matrices; ``levels`` quantizes to force ties."""
    F = rng.random((n, m))
    X = rng.random((n, D))
    if levels:
        F = np.round(F * levels) / levels
    return F, X
