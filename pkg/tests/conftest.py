import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("symbidisc", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("symbidisc")


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def random_disc(rng, n, radius=1.0):
    r = radius * np.sqrt(rng.uniform(size=n))
    return r * np.exp(2j * np.pi * rng.uniform(size=n))


def random_circle(rng, n):
    return np.exp(2j * np.pi * rng.uniform(size=n))


ACCEPTANCE = {}


def record(criterion, passed, detail=""):
    """Store and print one acceptance verdict; the summary hook repeats them."""
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
    ACCEPTANCE[criterion] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[key])
