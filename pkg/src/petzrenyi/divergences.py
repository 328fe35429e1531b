"""Petz-Rényi relative entropies, their symmetric mean, and Holevo fidelity.

Divergence values are plain floats; ``math.inf`` marks a support violation.
"""

from __future__ import annotations

import math

import numpy as np

from .linalg import (
    DensityMatrix,
    check_same_dim,
    matrix_log,
    matrix_power,
    validate_density,
)

# squared-overlap mass of supp(rho) outside supp(sigma) treated as zero
SUPPORT_LEAK_TOL = 1e-14
# trace overlaps at or below this are treated as exact zeros
OVERLAP_FLOOR = 1e-300

DEFAULT_ALPHAS = (0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0)


def _pair(rho, sigma) -> tuple[DensityMatrix, DensityMatrix]:
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    check_same_dim(rho, sigma)
    return rho, sigma


def support_contained(rho, sigma) -> bool:
    """True if supp(rho) lies inside supp(sigma) (up to ``SUPPORT_LEAK_TOL``)."""
    rho, sigma = _pair(rho, sigma)
    vr = rho.eigenvectors[:, rho.support_mask]
    vs_null = sigma.eigenvectors[:, ~sigma.support_mask]
    if vs_null.shape[1] == 0:
        return True
    leak = np.sum(np.abs(vs_null.conj().T @ vr) ** 2)
    return bool(leak <= SUPPORT_LEAK_TOL)


def _check_alpha(alpha):
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")


def petz_trace(rho, sigma, alpha) -> float:
    """``tr(rho**alpha sigma**(1-alpha))`` using support-restricted powers."""
    rho, sigma = _pair(rho, sigma)
    a = matrix_power(rho, alpha)
    b = matrix_power(sigma, 1.0 - alpha)
    return float(np.real(np.sum(a * b.T)))


def petz_renyi(rho, sigma, alpha: float) -> float:
    """Petz-Rényi relative entropy ``D_alpha(rho || sigma)``.

    ``(1/(alpha-1)) ln tr(rho^alpha sigma^(1-alpha))`` for ``alpha`` in
    ``(0,1) U (1,inf)``. Returns ``inf`` if ``alpha > 1`` and supp(rho) is
    not contained in supp(sigma), or if the trace overlap vanishes.

    Raises
    ------
    ValueError
        For ``alpha <= 0`` or ``alpha == 1`` (use
        :func:`quantum_relative_entropy` for the latter).
    """
    _check_alpha(alpha)
    if alpha == 1:
        raise ValueError("alpha = 1 is the quantum relative entropy; call quantum_relative_entropy")
    rho, sigma = _pair(rho, sigma)
    if np.array_equal(rho.matrix, sigma.matrix):
        return 0.0
    if alpha > 1 and not support_contained(rho, sigma):
        return math.inf
    tr = petz_trace(rho, sigma, alpha)
    if tr <= OVERLAP_FLOOR:
        return math.inf
    return math.log(tr) / (alpha - 1.0)


def quantum_relative_entropy(rho, sigma) -> float:
    """Umegaki relative entropy ``tr(rho ln rho) - tr(rho ln sigma)``."""
    rho, sigma = _pair(rho, sigma)
    if np.array_equal(rho.matrix, sigma.matrix):
        return 0.0
    if not support_contained(rho, sigma):
        return math.inf
    p = rho.eigenvalues[rho.support_mask]
    neg_entropy = float(np.sum(p * np.log(p)))
    cross = float(np.real(np.sum(rho.matrix * matrix_log(sigma).T)))
    return neg_entropy - cross


def symmetric_petz_renyi(rho, sigma, alpha: float) -> float:
    """``(D_alpha(rho||sigma) + D_alpha(sigma||rho)) / 2``.

    At ``alpha == 1`` both directions use the quantum relative entropy.
    An infinite direction makes the result infinite.
    """
    _check_alpha(alpha)
    rho, sigma = _pair(rho, sigma)
    if alpha == 1:
        fwd = quantum_relative_entropy(rho, sigma)
        if math.isinf(fwd):
            return math.inf
        bwd = quantum_relative_entropy(sigma, rho)
    else:
        fwd = petz_renyi(rho, sigma, alpha)
        if math.isinf(fwd):
            return math.inf
        bwd = petz_renyi(sigma, rho, alpha)
    if math.isinf(bwd):
        return math.inf
    return 0.5 * (fwd + bwd)


def holevo_fidelity(rho, sigma) -> float:
    """``[tr(sqrt(rho) sqrt(sigma))]**2``."""
    rho, sigma = _pair(rho, sigma)
    return petz_trace(rho, sigma, 0.5) ** 2
