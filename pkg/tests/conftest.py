import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def random_hermitian(rng, n, scale=1.0):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (a + a.conj().T) / 2


ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request, capsys):
    """Record one pass/fail line per acceptance criterion.

    Lines are printed when the test runs and repeated in the terminal summary.
    """
    lines = request.config.stash[ACCEPTANCE_KEY]

    def report(number, title, value, tolerance, passed=None, unit=""):
        ok = value <= tolerance if passed is None else passed
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {value:.3e}{unit} (tolerance {tolerance:.1e}{unit})"
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
