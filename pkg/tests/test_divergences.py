import math

import numpy as np
import pytest
import scipy.linalg

from petzrenyi.divergences import (
    holevo_fidelity,
    petz_renyi,
    quantum_relative_entropy,
    support_contained,
    symmetric_petz_renyi,
)
from petzrenyi.linalg import trace_distance
from petzrenyi.samplers import RngStream, random_density, saturating_pair

from conftest import ALPHAS, ket, random_pair

LN_1_16 = 0.14842000511827328
KL_07_05 = 0.082282878505051846
LN_COSH3_OVER_COSH1 = 1.8755476740947580

RHO = np.diag([0.7, 0.3])
HALF = np.eye(2) / 2


def petz_oracle(rho, sigma, alpha):
    """Full-rank reference through scipy's fractional matrix power."""
    a = scipy.linalg.fractional_matrix_power(rho.matrix, alpha)
    b = scipy.linalg.fractional_matrix_power(sigma.matrix, 1 - alpha)
    return math.log(np.trace(a @ b).real) / (alpha - 1)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 2.0, 3.0])
def test_identical_states(alpha):
    rho = random_density(3, rng=RngStream(1))
    assert petz_renyi(rho, rho, alpha) == pytest.approx(0, abs=1e-13)
    assert symmetric_petz_renyi(rho, rho, alpha) == pytest.approx(0, abs=1e-13)


def test_commuting_example():
    assert petz_renyi(RHO, HALF, 2.0) == pytest.approx(LN_1_16, abs=1e-14)


def test_support_violation():
    pure = ket(1, 0)
    assert petz_renyi(pure, HALF, 2.0) == pytest.approx(math.log(2), abs=1e-14)
    assert petz_renyi(HALF, pure, 2.0) == math.inf
    assert not support_contained(HALF, pure)
    assert support_contained(pure, HALF)


def test_orthogonal_supports_below_one():
    assert petz_renyi(ket(1, 0), ket(0, 1), 0.5) == math.inf
    assert symmetric_petz_renyi(ket(1, 0), ket(0, 1), 0.3) == math.inf


def test_alpha_errors():
    with pytest.raises(ValueError):
        petz_renyi(RHO, HALF, 1.0)
    with pytest.raises(ValueError):
        petz_renyi(RHO, HALF, 0.0)
    with pytest.raises(ValueError):
        symmetric_petz_renyi(RHO, HALF, -1.0)


def test_relative_entropy_examples():
    rho = random_density(4, rng=RngStream(2))
    assert quantum_relative_entropy(rho, rho) == pytest.approx(0, abs=1e-13)
    assert quantum_relative_entropy(RHO, HALF) == pytest.approx(KL_07_05, abs=1e-14)
    assert quantum_relative_entropy(HALF, ket(1, 0)) == math.inf


def test_relative_entropy_against_logm():
    for k in range(10):
        rho, sigma, _ = random_pair(3, k)
        oracle = np.trace(
            rho.matrix @ (scipy.linalg.logm(rho.matrix) - scipy.linalg.logm(sigma.matrix))
        ).real
        assert quantum_relative_entropy(rho, sigma) == pytest.approx(oracle, abs=1e-9)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9, 1.5, 2.0, 3.0])
def test_petz_against_scipy(alpha):
    for k in range(10):
        rho, sigma, _ = random_pair(4, k)
        assert petz_renyi(rho, sigma, alpha) == pytest.approx(
            petz_oracle(rho, sigma, alpha), abs=1e-9
        )


def test_saturating_family_closed_form():
    rho, sigma, _ = saturating_pair(2.0)
    assert symmetric_petz_renyi(rho, sigma, 2.0) == pytest.approx(LN_COSH3_OVER_COSH1, abs=1e-13)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_symmetric_and_nonnegative(alpha):
    for k in range(30):
        rho, sigma, _ = random_pair(5, k, full_rank=k % 2 == 0)
        fwd = symmetric_petz_renyi(rho, sigma, alpha)
        assert fwd == symmetric_petz_renyi(sigma, rho, alpha)
        assert fwd >= -1e-9


def test_half_is_minus_log_fidelity():
    for k in range(100):
        rho, sigma, _ = random_pair(6, k)
        d = symmetric_petz_renyi(rho, sigma, 0.5)
        assert abs(d + math.log(holevo_fidelity(rho, sigma))) <= 1e-9


def test_fidelity_examples_and_sqrtm_oracle():
    rho = random_density(3, rng=RngStream(4))
    assert holevo_fidelity(rho, rho) == pytest.approx(1, abs=1e-13)
    assert holevo_fidelity(ket(1, 0), ket(0, 1)) == pytest.approx(0, abs=1e-15)
    assert holevo_fidelity(HALF, ket(1, 0)) == pytest.approx(0.5, abs=1e-15)
    for k in range(10):
        r, s, _ = random_pair(7, k)
        oracle = np.trace(scipy.linalg.sqrtm(r.matrix) @ scipy.linalg.sqrtm(s.matrix)).real ** 2
        assert holevo_fidelity(r, s) == pytest.approx(oracle, abs=1e-10)


def test_holevo_inequality():
    for k in range(200):
        rho, sigma, _ = random_pair(8, k, full_rank=k % 3 != 0)
        T = trace_distance(rho, sigma)
        assert T <= math.sqrt(max(1 - holevo_fidelity(rho, sigma), 0)) + 1e-9


def test_continuity_at_one():
    for k in range(30):
        rho, sigma, _ = random_pair(9, k)
        d1 = symmetric_petz_renyi(rho, sigma, 1.0)
        for a in (1 - 1e-5, 1 + 1e-5):
            assert abs(symmetric_petz_renyi(rho, sigma, a) - d1) <= 1e-3
