import math

import numpy as np
import pytest

from petzrenyi.bounds import bound_B, uncertainty_f
from petzrenyi.linalg import Observable, trace_distance
from petzrenyi.samplers import RngStream, random_distribution, random_trajectory_instance, saturating_pair
from petzrenyi.uncertainty import (
    InequalityMargin,
    PreconditionError,
    moment_summary,
    omega_operator,
    s_statistic,
    verify_chain,
    verify_classical_turs,
    verify_exchange_tur,
    verify_generalized_holevo,
    verify_inverted_ur,
    verify_theorem,
)

from conftest import ALPHAS, ket, random_pair

TANH_1 = 0.76159415595576489
INV_SINH2_1 = 0.72406166096631047


def test_s_examples():
    rho, sigma, theta = saturating_pair(2.0)
    assert s_statistic(rho, sigma, theta) == pytest.approx(TANH_1, abs=1e-15)
    assert s_statistic(rho, rho, theta) == 0
    assert s_statistic(rho, sigma, np.eye(2)) == 0
    assert s_statistic(ket(1, 0), ket(0, 1), np.diag([1.0, -1.0])) == 1


def test_s_invariance():
    for k in range(30):
        rho, sigma, theta = random_pair(1, k)
        s = s_statistic(rho, sigma, theta)
        t = theta.matrix
        shifted = Observable(-3.5 * t + 2.0 * np.eye(rho.dim))
        assert s_statistic(rho, sigma, shifted) == pytest.approx(s, abs=1e-12)
        assert s_statistic(sigma, rho, theta) == pytest.approx(s, abs=1e-15)
        assert 0 <= s <= 1


def test_omega_examples():
    om = omega_operator(np.diag([0.7, 0.3]), np.diag([0.3, 0.7]))
    np.testing.assert_allclose(om.omega.matrix, np.diag([1, -1]), atol=1e-15)
    assert om.epsilon == 0
    om = omega_operator(np.diag([0.5, 0.3, 0.2]), np.diag([0.3, 0.5, 0.2]))
    assert om.epsilon == pytest.approx(0.2)
    assert om.epsilon_sigma == pytest.approx(0.2)


def test_omega_mean_gap_is_twice_trace_distance():
    for k in range(100):
        rho, sigma, _ = random_pair(2, k, full_rank=k % 2 == 0)
        om = omega_operator(rho, sigma)
        gap = rho.expectation(om.omega.matrix) - sigma.expectation(om.omega.matrix)
        assert gap == pytest.approx(2 * trace_distance(rho, sigma), abs=1e-12)
        assert abs(om.epsilon - om.epsilon_sigma) <= 1e-12


def test_margin_of():
    m = InequalityMargin.of(math.inf, 3.0, "x")
    assert m.margin == math.inf and m.holds()
    m = InequalityMargin.of(1.0, 1.0 + 2e-9, "x")
    assert not m.holds(1e-9) and m.holds(1e-8)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_observable_bound_random(alpha):
    for k in range(150):
        rho, sigma, theta = random_pair(3, k, full_rank=k % 2 == 0)
        assert verify_theorem(rho, sigma, theta, alpha).margin >= -1e-9


@pytest.mark.parametrize("alpha", ALPHAS)
@pytest.mark.parametrize("eps", [0.1, 0.5, 1.0, 2.0, 3.0, 4.0])
def test_observable_bound_saturation(alpha, eps):
    rho, sigma, theta = saturating_pair(eps, phi=-2.5)
    r = verify_theorem(rho, sigma, theta, alpha)
    assert abs(r.margin) <= 1e-8


def test_saturation_eps_zero():
    rho, sigma, theta = saturating_pair(0.0)
    r = verify_theorem(rho, sigma, theta, 2.0)
    assert r.lhs == pytest.approx(0, abs=1e-15) and r.rhs == 0


def test_chain_links():
    for k in range(60):
        rho, sigma, theta = random_pair(4, k, full_rank=k % 2 == 0)
        for a in (0.5, 1.0, 2.0):
            c = verify_chain(rho, sigma, theta, a)
            assert c.divergence_gap <= 1e-9
            assert c.lemma1.holds() and c.lemma23.holds(1e-10) and c.theorem.holds()


def test_holevo_stages():
    for k in range(150):
        rho, sigma, _ = random_pair(5, k, full_rank=k % 2 == 0)
        for a in ALPHAS:
            st = verify_generalized_holevo(rho, sigma, a)
            assert st.trace_bound.margin >= -1e-10
            assert st.combined.margin >= -1e-9
            assert st.theorem.margin >= -1e-9


def test_holevo_half_closed_form():
    for k in range(50):
        rho, sigma, _ = random_pair(6, k)
        st = verify_generalized_holevo(rho, sigma, 0.5)
        T = st.trace_bound.rhs
        assert st.combined.rhs == pytest.approx(-math.log1p(-T * T), abs=1e-12)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_inverted_random(alpha):
    for k in range(100):
        rho, sigma, theta = random_pair(7, k)
        r = verify_inverted_ur(rho, sigma, theta, alpha)
        assert r.margin >= -1e-9 * max(1.0, r.rhs)


def test_inverted_closed_forms():
    for k in range(30):
        rho, sigma, theta = random_pair(8, k)
        r = verify_inverted_ur(rho, sigma, theta, 0.5)
        assert r.extra["rhs_fidelity"] == pytest.approx(r.rhs, rel=1e-7)
        r = verify_inverted_ur(rho, sigma, theta, 1.0)
        assert r.extra["rhs_sinh"] == pytest.approx(r.rhs, rel=1e-7)


@pytest.mark.parametrize("eps", [0.5, 1.0, 2.0, 3.0])
def test_inverted_saturation_alpha_one(eps):
    rho, sigma, theta = saturating_pair(eps, phi=0.7)
    r = verify_inverted_ur(rho, sigma, theta, 1.0)
    assert r.lhs == pytest.approx(1 / math.sinh(eps / 2) ** 2, rel=1e-12)
    assert abs(r.margin) <= 1e-8


def test_inverted_example():
    rho, sigma, theta = saturating_pair(2.0)
    r = verify_inverted_ur(rho, sigma, theta, 1.0)
    assert r.lhs == pytest.approx(INV_SINH2_1, abs=1e-13)
    assert r.rhs == pytest.approx(INV_SINH2_1, abs=1e-8)


def test_inverted_equal_means():
    rho, sigma, _ = saturating_pair(1.0)
    with pytest.raises(PreconditionError):
        verify_inverted_ur(rho, sigma, np.eye(2), 1.0)


def test_moment_summary_values():
    rho, sigma, theta = saturating_pair(2.0, phi=2.0)
    ms = moment_summary(rho, sigma, theta)
    assert ms.mean_rho == pytest.approx(2 * TANH_1)
    assert ms.var_rho == pytest.approx(4 * (1 - TANH_1**2))


@pytest.mark.parametrize("alpha", ALPHAS)
def test_classical_turs(alpha):
    for k in range(100):
        rng = RngStream(9, k)
        P, Q = random_distribution(5, rng), random_distribution(5, rng)
        r = verify_classical_turs(P, Q, rng.normal(5), alpha)
        assert r.margin >= -1e-9 * max(1.0, r.rhs)


def test_exchange_tur_random():
    hits = 0
    for k in range(300):
        rng = RngStream(10, k)
        P, m, theta = random_trajectory_instance(2 + k % 9, rng)
        try:
            r = verify_exchange_tur(P, m, theta)
        except PreconditionError:
            continue
        hits += 1
        assert r.margin >= -1e-9 * max(1.0, r.rhs)
    assert hits > 250


@pytest.mark.parametrize("eps", [0.2, 1.0, 2.0, 4.0])
def test_exchange_tur_saturation(eps):
    a = 0.5 * (1 + math.tanh(eps / 2))
    r = verify_exchange_tur([a, 1 - a], [1, 0], [1.3, -1.3])
    assert r.extra["entropy_production"] == pytest.approx(eps * math.tanh(eps / 2), rel=1e-14)
    assert abs(r.margin) <= 1e-8


def test_exchange_preconditions():
    with pytest.raises(PreconditionError):
        verify_exchange_tur([0.5, 0.5], [1, 0], [1.0, 1.0])
    with pytest.raises(PreconditionError):
        verify_exchange_tur([0.5, 0.5], [1, 0], [1.0, -1.0])
    with pytest.raises(PreconditionError):
        verify_exchange_tur([1.0, 0.0], [1, 0], [1.0, -1.0])


def test_f_at_infinite_divergence():
    r = verify_inverted_ur(ket(1, 0), ket(0, 1), np.diag([1.0, -1.0]), 0.5)
    assert r.lhs == 0 and r.rhs == 0
    assert uncertainty_f(2.0, math.inf) == 0
    assert bound_B(2.0, 0.0) == 0
