"""The mean-shift statistic ``s``, the sign operator of ``rho - sigma``, and
verifiers that report each inequality as an :class:`InequalityMargin`.

Every verifier returns ``margin = lhs - rhs``; the inequality holds when the
margin is non-negative. An infinite divergence short-circuits to an
infinite margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds
from .classical import (
    Involution,
    kl_divergence,
    symmetric_classical_renyi,
    triangular_discrimination,
)
from .divergences import holevo_fidelity, symmetric_petz_renyi
from .linalg import (
    Observable,
    as_observable,
    check_same_dim,
    trace_distance,
    validate_density,
)
from .nussbaum_szkola import ns_embed

# relative size below which a mean shift counts as zero
MEAN_SHIFT_RTOL = 1e-12
KERNEL_RTOL = 1e-12


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class MomentSummary:
    mean_rho: float
    mean_sigma: float
    var_rho: float
    var_sigma: float
    scale: float = 1.0

    @property
    def shift(self) -> float:
        return self.mean_rho - self.mean_sigma

    @property
    def equal_means(self) -> bool:
        return abs(self.shift) <= MEAN_SHIFT_RTOL * max(self.scale, 1.0)

    def uncertainty_ratio(self) -> float:
        """``(var_rho + var_sigma) / ((1/2) shift**2)``."""
        if self.equal_means:
            raise PreconditionError("means are equal; the uncertainty ratio is undefined")
        return (self.var_rho + self.var_sigma) / (0.5 * self.shift**2)


@dataclass(frozen=True)
class InequalityMargin:
    lhs: float
    rhs: float
    margin: float
    label: str
    alpha: float | None = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def of(cls, lhs, rhs, label, alpha=None, **extra):
        if math.isinf(lhs) and lhs > 0:
            margin = math.inf
        else:
            margin = lhs - rhs
        return cls(float(lhs), float(rhs), float(margin), label, alpha, extra)

    def holds(self, tol: float = 1e-9) -> bool:
        return self.margin >= -tol


def moment_summary(rho, sigma, theta) -> MomentSummary:
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    th = as_observable(theta).matrix
    check_same_dim(rho, sigma, th)
    th2 = th @ th
    m_r, m_s = rho.expectation(th), sigma.expectation(th)
    v_r = max(rho.expectation(th2) - m_r**2, 0.0)
    v_s = max(sigma.expectation(th2) - m_s**2, 0.0)
    scale = float(np.max(np.abs(np.linalg.eigvalsh(th))))
    return MomentSummary(m_r, m_s, v_r, v_s, scale)


def classical_moment_summary(P, Q, theta) -> MomentSummary:
    P = np.asarray(getattr(P, "weights", P), dtype=float)
    Q = np.asarray(getattr(Q, "weights", Q), dtype=float)
    theta = np.asarray(theta, dtype=float)
    m_p, m_q = float(P @ theta), float(Q @ theta)
    v_p = max(float(P @ theta**2) - m_p**2, 0.0)
    v_q = max(float(Q @ theta**2) - m_q**2, 0.0)
    return MomentSummary(m_p, m_q, v_p, v_q, float(np.max(np.abs(theta))))


def s_from_moments(ms: MomentSummary) -> float:
    if ms.equal_means:
        return 0.0
    shift = 0.5 * ms.shift**2
    return math.sqrt(shift / (ms.var_rho + ms.var_sigma + shift))


def s_statistic(rho, sigma, theta) -> float:
    """Normalized mean shift of ``theta`` between ``rho`` and ``sigma``, in [0, 1]."""
    return s_from_moments(moment_summary(rho, sigma, theta))


@dataclass(frozen=True)
class OmegaResult:
    omega: Observable
    epsilon: float
    kernel: np.ndarray  # projector onto the null space of rho - sigma
    epsilon_sigma: float


def omega_operator(rho, sigma) -> OmegaResult:
    """Sign function of ``rho - sigma`` and the weight of its kernel.

    Eigenvalues with ``|w| <= 1e-12 * max|w|`` are treated as zero.
    """
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    n = check_same_dim(rho, sigma)
    diff = rho.matrix - sigma.matrix
    w, v = np.linalg.eigh(0.5 * (diff + diff.conj().T))
    scale = np.max(np.abs(w))
    zero = np.abs(w) <= KERNEL_RTOL * scale if scale > 0 else np.ones(n, dtype=bool)
    sign = np.where(zero, 0.0, np.sign(w))
    omega = (v * sign) @ v.conj().T
    vk = v[:, zero]
    kernel = vk @ vk.conj().T
    return OmegaResult(
        Observable(omega), rho.expectation(kernel), kernel, sigma.expectation(kernel)
    )


# ---------------------------------------------------------------- verifiers


def verify_theorem(rho, sigma, theta, alpha: float) -> InequalityMargin:
    """``D~_alpha(rho, sigma) >= B(alpha, s(rho, sigma; theta))``."""
    s = s_statistic(rho, sigma, theta)
    lhs = symmetric_petz_renyi(rho, sigma, alpha)
    rhs = bounds.bound_B_clamped(alpha, s)
    return InequalityMargin.of(lhs, rhs, "theorem", alpha, s=s)


@dataclass(frozen=True)
class ChainResult:
    """Links of ``D~(rho,sigma) = D~(P,Q) >= B(sqrt delta) >= B(s)``."""

    divergence_gap: float  # |D~(rho,sigma) - D~(P,Q)|, 0 for matched infinities
    lemma1: InequalityMargin  # D~(P,Q) >= B(alpha, sqrt(delta))
    lemma23: InequalityMargin  # sqrt(delta) >= s
    theorem: InequalityMargin


def verify_chain(rho, sigma, theta, alpha: float) -> ChainResult:
    emb = ns_embed(rho, sigma, theta)
    d_q = symmetric_petz_renyi(rho, sigma, alpha)
    d_c = symmetric_classical_renyi(emb.P, emb.Q, alpha)
    if math.isinf(d_q) or math.isinf(d_c):
        gap = 0.0 if d_q == d_c else math.inf
    else:
        gap = abs(d_q - d_c)
    root_delta = math.sqrt(triangular_discrimination(emb.P, emb.Q))
    s = s_statistic(rho, sigma, theta)
    lemma1 = InequalityMargin.of(
        d_c, bounds.bound_B_clamped(alpha, root_delta), "lemma1", alpha
    )
    lemma23 = InequalityMargin.of(root_delta, s, "sqrt-delta-vs-s", alpha)
    theorem = InequalityMargin.of(d_q, bounds.bound_B_clamped(alpha, s), "theorem", alpha, s=s)
    return ChainResult(gap, lemma1, lemma23, theorem)


@dataclass(frozen=True)
class HolevoStages:
    theorem: InequalityMargin  # D~ >= B(alpha, s(omega))
    trace_bound: InequalityMargin  # s(omega) >= T
    combined: InequalityMargin  # D~ >= B(alpha, T)
    epsilon: float


def verify_generalized_holevo(rho, sigma, alpha: float) -> HolevoStages:
    om = omega_operator(rho, sigma)
    T = trace_distance(rho, sigma)
    s_om = s_statistic(rho, sigma, om.omega)
    lhs = symmetric_petz_renyi(rho, sigma, alpha)
    extra = dict(T=T, s=s_om, epsilon=om.epsilon)
    return HolevoStages(
        InequalityMargin.of(lhs, bounds.bound_B_clamped(alpha, s_om), "holevo-omega", alpha, **extra),
        InequalityMargin.of(s_om, T, "omega-vs-trace", None, **extra),
        InequalityMargin.of(lhs, bounds.bound_B_clamped(alpha, T), "holevo", alpha, **extra),
        om.epsilon,
    )


def _inverted(ms: MomentSummary, D: float, alpha: float, label: str, **extra):
    lhs = ms.uncertainty_ratio()
    rhs = 0.0 if math.isinf(D) else float(bounds.uncertainty_f(alpha, max(D, 0.0)))
    return InequalityMargin(lhs, rhs, lhs - rhs, label, alpha, dict(extra, D=D))


def verify_inverted_ur(rho, sigma, theta, alpha: float) -> InequalityMargin:
    """``(var_rho + var_sigma) / ((1/2) shift**2) >= f(alpha, D~_alpha)``.

    At ``alpha = 1/2`` the Holevo-fidelity form ``F / (1 - F)`` is reported
    as ``extra['rhs_fidelity']``; at ``alpha = 1`` the ``1/sinh^2`` form as
    ``extra['rhs_sinh']``.

    Raises
    ------
    PreconditionError
        If ``theta`` has the same mean in both states.
    """
    ms = moment_summary(rho, sigma, theta)
    if ms.equal_means:
        raise PreconditionError("theta has equal means under rho and sigma")
    D = symmetric_petz_renyi(rho, sigma, alpha)
    extra = {}
    if alpha == 0.5:
        F = holevo_fidelity(rho, sigma)
        extra["rhs_fidelity"] = F / (1.0 - F) if F < 1 else math.inf
    if alpha == 1 and not math.isinf(D):
        extra["rhs_sinh"] = float(bounds.uncertainty_f_alpha1(max(D, 0.0)))
    return _inverted(ms, D, alpha, "inverted-ur", **extra)


def verify_classical_turs(P, Q, theta, alpha: float) -> InequalityMargin:
    """Classical analogue of :func:`verify_inverted_ur` for a random variable
    ``theta`` under distributions ``P`` and ``Q``."""
    ms = classical_moment_summary(P, Q, theta)
    if ms.equal_means:
        raise PreconditionError("theta has equal means under P and Q")
    D = symmetric_classical_renyi(P, Q, alpha)
    return _inverted(ms, D, alpha, "classical-tur")


def verify_exchange_tur(P, m, theta) -> InequalityMargin:
    """``Var_P(theta) / <theta>_P**2 >= f(1, <Sigma>)`` for a current that is
    odd under the involution ``m``."""
    m = m if isinstance(m, Involution) else Involution(m)
    p = np.asarray(getattr(P, "weights", P), dtype=float)
    theta = np.asarray(theta, dtype=float)
    if np.max(np.abs(theta[m.mapping] + theta)) > 1e-12 * max(1.0, np.max(np.abs(theta))):
        raise PreconditionError("theta must be antisymmetric under the involution")
    pm = m.pullback(p)
    if np.any((p > 0) != (pm > 0)):
        raise PreconditionError("P and P o m must be mutually absolutely continuous")
    mean = float(p @ theta)
    if abs(mean) <= MEAN_SHIFT_RTOL * max(1.0, np.max(np.abs(theta))):
        raise PreconditionError("the current has zero mean")
    var = max(float(p @ theta**2) - mean**2, 0.0)
    entropy_production = kl_divergence(p, pm)
    lhs = var / mean**2
    rhs = float(bounds.uncertainty_f(1.0, entropy_production))
    return InequalityMargin(
        lhs, rhs, lhs - rhs, "exchange-tur", 1.0, dict(entropy_production=entropy_production)
    )
