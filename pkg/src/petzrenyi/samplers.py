"""Seeded instance generators and the two-level saturating family.

Randomness comes from a Philox counter-based generator keyed by
``(seed, substream)``: trial ``k`` of a sweep uses substream ``k`` and is
reproducible on its own, independent of how trials are scheduled. Gaussian
variates use the Box-Muller transform of Philox uniforms rather than
numpy's ziggurat sampler.
"""

from __future__ import annotations

import math

import numpy as np

from .classical import Distribution, Involution
from .linalg import DensityMatrix, Observable, validate_density

_MASK64 = (1 << 64) - 1


class RngStream:
    """Uniform and Gaussian variates for one ``(seed, substream)`` pair."""

    def __init__(self, seed: int, substream: int = 0):
        self.seed = int(seed) & _MASK64
        self.substream = int(substream) & _MASK64
        key = np.array([self.seed, self.substream], dtype=np.uint64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def __repr__(self):
        return f"RngStream(seed={self.seed}, substream={self.substream})"

    def uniform(self, size=None):
        """Uniform variates on ``[0, 1)``."""
        return self._gen.random(size)

    def integers(self, low, high):
        """Integer in ``[low, high)`` from one uniform draw."""
        return low + int(self.uniform() * (high - low))

    def normal(self, size):
        """Standard normal variates by Box-Muller."""
        n = int(np.prod(size))
        m = (n + 1) // 2
        u1 = 1.0 - self.uniform(m)  # (0, 1], keeps the log finite
        u2 = self.uniform(m)
        r = np.sqrt(-2.0 * np.log(u1))
        z = np.concatenate([r * np.cos(2 * np.pi * u2), r * np.sin(2 * np.pi * u2)])
        return z[:n].reshape(size)

    def complex_normal(self, size):
        """Real and imaginary parts independent standard normals."""
        return self.normal(size) + 1j * self.normal(size)

    def permutation(self, n):
        return np.argsort(self.uniform(n), kind="stable")


def random_density(dim: int, rank: int | None = None, rng: RngStream | None = None) -> DensityMatrix:
    """``G G^dagger / tr(G G^dagger)`` for a ``dim x rank`` complex Gaussian ``G``."""
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must satisfy 1 <= rank <= dim, got rank={rank}, dim={dim}")
    rng = rng or RngStream(0)
    g = rng.complex_normal((dim, rank))
    m = g @ g.conj().T
    return validate_density(m / np.real(np.trace(m)))


def random_observable(dim: int, rng: RngStream | None = None) -> Observable:
    rng = rng or RngStream(0)
    a = rng.complex_normal((dim, dim))
    return Observable(0.5 * (a + a.conj().T))


def saturating_pair(eps: float, phi: float = 1.0):
    """Two-level states and observable that saturate the uncertainty bound.

    Basis order is ``(|1>, |0>)``, so ``rho = diag(e^{eps/2}, e^{-eps/2}) /
    (2 cosh(eps/2))``, ``sigma`` has the entries swapped and
    ``theta = diag(phi, -phi)``.
    """
    if phi == 0:
        raise ValueError("phi must be non-zero")
    a = 0.5 * (1.0 + math.tanh(0.5 * eps))
    rho = validate_density(np.diag([a, 1.0 - a]))
    sigma = validate_density(np.diag([1.0 - a, a]))
    theta = Observable(np.diag([phi, -phi]).astype(complex))
    return rho, sigma, theta


def random_distribution(n: int, rng: RngStream | None = None) -> Distribution:
    """Normalized exponential variates (uniform on the simplex)."""
    rng = rng or RngStream(0)
    e = -np.log(1.0 - rng.uniform(n))
    return Distribution(e / e.sum())


def random_involution(n: int, rng: RngStream | None = None) -> Involution:
    """Random perfect pairing of a permutation; odd ``n`` leaves one fixed point."""
    rng = rng or RngStream(0)
    perm = rng.permutation(n)
    m = np.arange(n)
    for a, b in zip(perm[0::2], perm[1::2]):
        m[a], m[b] = b, a
    return Involution(m)


def random_trajectory_instance(n: int, rng: RngStream | None = None):
    """``(P, m, theta)`` with ``theta(m(s)) = -theta(s)`` and 0 at fixed points."""
    rng = rng or RngStream(0)
    P = random_distribution(n, rng)
    m = random_involution(n, rng)
    raw = rng.normal(n)
    theta = 0.5 * (raw - raw[m.mapping])
    return P, m, theta
