import numpy as np
import pytest

from petzrenyi.samplers import RngStream, random_density, random_observable

ALPHAS = (0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0)


def random_pair(seed, k, dim=None, full_rank=True):
    rng = RngStream(seed, k)
    d = dim or rng.integers(2, 7)
    if full_rank:
        r1 = r2 = d
    else:
        r1, r2 = rng.integers(1, d + 1), rng.integers(1, d + 1)
    return random_density(d, r1, rng), random_density(d, r2, rng), random_observable(d, rng)


@pytest.fixture
def pairs():
    """Fifty full-rank random (rho, sigma, theta) triples, dims 2-6."""
    return [random_pair(11, k) for k in range(50)]


def ket(*amps):
    v = np.asarray(amps, dtype=complex)
    return np.outer(v, v.conj()) / np.vdot(v, v).real


# one line per acceptance criterion, echoed in the terminal summary so the
# report survives output capture
ACCEPTANCE_LINES = []


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d} {title}: {detail}"
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
