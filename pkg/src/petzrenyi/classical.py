"""Classical distributions, Rényi divergences and the involution framework.

Triangular discrimination uses the halved convention

    delta(P, Q) = sum_s (P_s - Q_s)**2 / (2 (P_s + Q_s)),

which takes values in [0, 1] and equals ``<tanh(Sigma/2)**2>`` for the
entropy variable of an involution. Terms with ``P_s = Q_s = 0`` contribute 0.
"""

from __future__ import annotations

import decimal
import math
from dataclasses import dataclass

import numpy as np

from .bounds import bound_B_clamped, arctanh
from .divergences import OVERLAP_FLOOR

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0:
            raise ValueError(f"weights must be a non-empty vector, got shape {w.shape}")
        if np.any(w < 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be finite and non-negative")
        if abs(w.sum() - 1.0) > NORMALIZATION_TOL:
            raise ValueError(f"weights sum to {w.sum():.15g}, expected 1")
        object.__setattr__(self, "weights", w)

    @property
    def support(self) -> np.ndarray:
        return self.weights > 0

    def __len__(self):
        return self.weights.size

    def mean(self, values):
        return np.sum(self.weights * np.asarray(values))


@dataclass(frozen=True)
class Involution:
    """A permutation ``m`` of ``range(n)`` with ``m[m[s]] == s``."""

    mapping: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.mapping, dtype=int)
        n = m.size
        if m.ndim != 1 or sorted(m.tolist()) != list(range(n)):
            raise ValueError("mapping must be a permutation of range(n)")
        if np.any(m[m] != np.arange(n)):
            raise ValueError("mapping is not an involution")
        object.__setattr__(self, "mapping", m)

    def __len__(self):
        return self.mapping.size

    def pullback(self, p) -> np.ndarray:
        """``s -> p[m(s)]``."""
        return np.asarray(p)[self.mapping]


@dataclass(frozen=True)
class EntropyVariable:
    values: np.ndarray
    source: Distribution
    involution: Involution


def _w(p) -> np.ndarray:
    if isinstance(p, Distribution):
        return p.weights
    return np.asarray(p, dtype=float)


def _w2(p, q):
    p, q = _w(p), _w(q)
    if p.shape != q.shape:
        raise ValueError(f"length mismatch: {p.shape} vs {q.shape}")
    return p, q


def kl_divergence(P, Q) -> float:
    P, Q = _w2(P, Q)
    if np.any((P > 0) & (Q == 0)):
        return math.inf
    m = P > 0
    return float(np.sum(P[m] * np.log(P[m] / Q[m])))


def classical_renyi(P, Q, alpha: float) -> float:
    """Rényi divergence ``D_alpha(P|Q) = ln(sum P^a Q^(1-a)) / (a - 1)``.

    ``alpha == 1`` returns the Kullback-Leibler divergence. Zero weights
    follow the same support rules as the quantum version: ``alpha > 1``
    with mass of ``P`` where ``Q`` vanishes gives ``inf``, and a vanishing
    overlap gives ``inf``.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if alpha == 1:
        return kl_divergence(P, Q)
    P, Q = _w2(P, Q)
    if alpha > 1 and np.any((P > 0) & (Q == 0)):
        return math.inf
    both = (P > 0) & (Q > 0)
    total = float(np.sum(P[both] ** alpha * Q[both] ** (1.0 - alpha)))
    if total <= OVERLAP_FLOOR:
        return math.inf
    return math.log(total) / (alpha - 1.0)


def symmetric_classical_renyi(P, Q, alpha: float) -> float:
    fwd = classical_renyi(P, Q, alpha)
    if math.isinf(fwd):
        return math.inf
    bwd = classical_renyi(Q, P, alpha)
    return math.inf if math.isinf(bwd) else 0.5 * (fwd + bwd)


def triangular_discrimination(P, Q) -> float:
    """Halved triangular discrimination, in [0, 1]."""
    P, Q = _w2(P, Q)
    s = P + Q
    m = s > 0
    return float(np.sum((P[m] - Q[m]) ** 2 / (2.0 * s[m])))


def total_variation(P, Q) -> float:
    P, Q = _w2(P, Q)
    return float(0.5 * np.sum(np.abs(P - Q)))


# ------------------------------------------------------------- involutions


def _as_involution(m) -> Involution:
    return m if isinstance(m, Involution) else Involution(m)


def mutually_continuous(P, m) -> bool:
    P = _w(P)
    Pm = _as_involution(m).pullback(P)
    return bool(np.all((P > 0) == (Pm > 0)))


def entropy_variable(P, m) -> EntropyVariable:
    """``Sigma(s) = ln(P(s) / P(m(s)))``, set to 0 where ``P(m(s)) == 0``."""
    dist = P if isinstance(P, Distribution) else Distribution(P)
    m = _as_involution(m)
    if len(m) != len(dist):
        raise ValueError("involution and distribution sizes differ")
    p = dist.weights
    pm = m.pullback(p)
    ok = (p > 0) & (pm > 0)
    sigma = np.zeros_like(p)
    sigma[ok] = np.log(p[ok]) - np.log(pm[ok])
    return EntropyVariable(sigma, dist, m)


def pair_construction(P, Q) -> tuple[Distribution, Involution]:
    """Lift ``(P, Q)`` to ``p = (P/2, Q/2)`` on ``2n`` points with the swap
    involution ``s <-> s + n``.

    ``delta(p, p o m) == delta(P, Q)``. The symmetric Rényi divergence of the
    lifted pair equals ``D~_alpha(P, Q)`` only at ``alpha`` in {1/2, 1}; in
    general ``D_alpha(p | p o m) = ln(((A + B) / 2)) / (alpha - 1)`` with
    ``A, B`` the two Rényi sums.
    """
    P, Q = _w2(P, Q)
    n = P.size
    p = Distribution(np.concatenate([P, Q]) / 2.0)
    m = Involution(np.concatenate([np.arange(n, 2 * n), np.arange(n)]))
    return p, m


def tanh2_mean(P, m) -> float:
    """``<tanh(Sigma/2)**2>_P``."""
    ev = entropy_variable(P, m)
    return float(ev.source.mean(np.tanh(0.5 * ev.values) ** 2))


def exp_moment_identity_check(P, m, alpha: float) -> tuple[float, float]:
    """Both sides of ``<exp((a-1) Sigma)> = <cosh((a-1/2) Sigma) / cosh(Sigma/2)>``.

    The left side is evaluated as ``sum P^a (P o m)^(1-a)``, independently
    of ``Sigma``.
    """
    m = _as_involution(m)
    if not mutually_continuous(P, m):
        raise ValueError("P and P o m must be mutually absolutely continuous")
    p = _w(P)
    pm = m.pullback(p)
    sup = p > 0
    lhs = float(np.sum(p[sup] ** alpha * pm[sup] ** (1.0 - alpha)))
    ev = entropy_variable(P, m)
    s = ev.values
    rhs = float(ev.source.mean(np.cosh((alpha - 0.5) * s) / np.cosh(0.5 * s)))
    return lhs, rhs


def _dec_cosh(x):
    e = x.exp()
    return (e + 1 / e) / 2


def exp_moment_residual(P, m, alpha: float, digits: int = 40) -> float:
    """``|lhs - rhs|`` of :func:`exp_moment_identity_check` in ``digits``-digit
    decimal arithmetic.

    At ``alpha = 3`` the moment can exceed ``1e7``, where one float64 ulp is
    already ``2e-9``; the decimal evaluation resolves the identity itself
    rather than double rounding.
    """
    m = _as_involution(m)
    if not mutually_continuous(P, m):
        raise ValueError("P and P o m must be mutually absolutely continuous")
    p = _w(P)
    pm = m.pullback(p)
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        a = decimal.Decimal(float(alpha))
        half = decimal.Decimal("0.5")
        lhs = rhs = decimal.Decimal(0)
        for x, y in zip(p, pm):
            if x <= 0:
                continue
            lx, ly = decimal.Decimal(float(x)).ln(), decimal.Decimal(float(y)).ln()
            lhs += (a * lx + (1 - a) * ly).exp()
            sigma = lx - ly
            rhs += decimal.Decimal(float(x)) * _dec_cosh((a - half) * sigma) / _dec_cosh(half * sigma)
        return float(abs(lhs - rhs))


def jensen_sides(P, m, alpha: float) -> tuple[float, float]:
    """``(<F(Sigma)>, F(2 arctanh sqrt(<tanh^2(Sigma/2)>)))`` with
    ``F(x) = cosh((a - 1/2) x) / cosh(x / 2)``.

    The first is >= the second for ``alpha > 1`` and <= for ``alpha < 1``.
    """
    ev = entropy_variable(P, m)
    s = ev.values

    def F(x):
        return np.cosh((alpha - 0.5) * x) / np.cosh(0.5 * x)

    mean_F = float(ev.source.mean(F(s)))
    t2 = float(ev.source.mean(np.tanh(0.5 * s) ** 2))
    return mean_F, float(F(2.0 * arctanh(math.sqrt(t2))))


def lemma1_sides(P, Q, alpha: float) -> tuple[float, float]:
    """``(D~_alpha(P, Q), B(alpha, sqrt(delta(P, Q))))``."""
    lhs = symmetric_classical_renyi(P, Q, alpha)
    return lhs, float(bound_B_clamped(alpha, math.sqrt(triangular_discrimination(P, Q))))


def _moments(weights, theta):
    mean = np.sum(weights * theta)
    second = np.sum(weights * np.abs(theta) ** 2)
    return mean, max(float(second - abs(mean) ** 2), 0.0)


def lemma2_bound(P, Q, Theta) -> tuple[float, float]:
    """Triangular discrimination versus the complex mean-shift bound.

    Returns ``(delta(P, Q), rhs)`` with
    ``rhs = (1/2)|dm|^2 / (var_P + var_Q + (1/2)|dm|^2)``,
    ``var = <|Theta|^2> - |<Theta>|^2`` and ``dm = <Theta>_P - <Theta>_Q``.
    A vanishing denominator gives ``rhs = 0``.
    """
    P, Q = _w2(P, Q)
    Theta = np.asarray(Theta, dtype=complex)
    if Theta.shape != P.shape:
        raise ValueError("Theta must have the same length as P and Q")
    mP, vP = _moments(P, Theta)
    mQ, vQ = _moments(Q, Theta)
    shift = 0.5 * abs(mP - mQ) ** 2
    denom = vP + vQ + shift
    rhs = 0.0 if denom <= 0 else shift / denom
    return triangular_discrimination(P, Q), float(rhs)
