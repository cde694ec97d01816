import numpy as np
import pytest

# filled by test_acceptance; echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_density(rng, rank=None):
    n = 8 if rank is None else rank
    m = rng.normal(size=(8, n)) + 1j * rng.normal(size=(8, n))
    r = m @ m.conj().T
    return r / np.trace(r).real
