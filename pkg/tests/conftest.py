import math

import numpy as np
import pytest

from majorana import StarSet

S6 = math.sqrt(6)

# the three worked examples in d = 5 and their stars
EXAMPLE_A = np.array([1, 3, 13 / S6, 6, 4], dtype=complex)
EXAMPLE_B = np.array([0, 0.5, S6, 5.5, 6], dtype=complex)
EXAMPLE_C = np.array([0, 0, 1 / S6, 1, 1], dtype=complex)
STARS_A = StarSet.from_pairs([(1, 1), (1, 1), (1, 2), (1, 2)])
STARS_B = StarSet.from_pairs([(0, 1), (1, 1), (1, 2), (1, 3)])
STARS_C = StarSet.from_pairs([(0, 1), (0, 1), (1, 1), (1, 1)])

_ACCEPTANCE_LINES = []


def random_complex(rng, *shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_density(rng, d, rank=None):
    rank = d if rank is None else rank
    g = random_complex(rng, d, rank)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def acceptance_report():
    def record(criterion, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
