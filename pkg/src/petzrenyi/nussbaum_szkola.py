"""Nussbaum-Szkoła embedding of a pair of states into classical distributions.

For ``rho = sum_i p_i |p_i><p_i|`` and ``sigma = sum_j q_j |q_j><q_j|``:

    P_ij = p_i |<p_i|q_j>|^2,    Q_ij = q_j |<p_i|q_j>|^2,
    Theta_ij = <p_i|theta|q_j> / <p_i|q_j>   (0 where the overlap vanishes).

Indices are flattened row-major over ``(i, j)``. Both eigenbases are sorted
by descending eigenvalue, and each eigenvector is rephased so its first
non-negligible component is real and positive. With degenerate spectra the
raw ``P, Q`` depend on the basis chosen inside each eigenspace; divergences
and moments do not.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import classical_renyi, kl_divergence
from .divergences import petz_renyi, quantum_relative_entropy
from .linalg import as_observable, check_same_dim, validate_density

OVERLAP_TOL = 1e-14


@dataclass(frozen=True)
class NsEmbedding:
    P: np.ndarray
    Q: np.ndarray
    Theta: np.ndarray | None
    dim: int
    rho_eigenvalues: np.ndarray
    sigma_eigenvalues: np.ndarray
    overlaps: np.ndarray  # <p_i|q_j>, shape (dim, dim)


def canonical_eigenbasis(rho):
    """Eigenvalues in descending order with phase-fixed eigenvectors."""
    rho = validate_density(rho)
    order = np.argsort(-rho.eigenvalues, kind="stable")
    w = rho.eigenvalues[order]
    v = rho.eigenvectors[:, order].copy()
    for k in range(v.shape[1]):
        col = v[:, k]
        lead = np.flatnonzero(np.abs(col) > 1e-12)[0]
        v[:, k] = col * (abs(col[lead]) / col[lead])
    return w, v


def ns_embed(rho, sigma, theta=None) -> NsEmbedding:
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    n = check_same_dim(rho, sigma)
    p, vp = canonical_eigenbasis(rho)
    q, vq = canonical_eigenbasis(sigma)
    ov = vp.conj().T @ vq
    ov2 = np.abs(ov) ** 2
    nz = ov2 > OVERLAP_TOL
    ov2 = np.where(nz, ov2, 0.0)
    P = (p[:, None] * ov2).ravel()
    Q = (q[None, :] * ov2).ravel()
    Theta = None
    if theta is not None:
        th = as_observable(theta).matrix
        check_same_dim(rho, th)
        num = vp.conj().T @ th @ vq
        Theta = np.zeros((n, n), dtype=complex)
        Theta[nz] = num[nz] / ov[nz]
        Theta = Theta.ravel()
    return NsEmbedding(P, Q, Theta, n, p, q, ov)


def ns_divergence_identity(rho, sigma, alpha: float) -> tuple[float, float]:
    """``(D_alpha(P|Q), D_alpha(rho||sigma))`` evaluated along separate paths.

    ``alpha == 1`` compares KL of the embedding with the quantum relative
    entropy.
    """
    emb = ns_embed(rho, sigma)
    if alpha == 1:
        return kl_divergence(emb.P, emb.Q), quantum_relative_entropy(rho, sigma)
    return classical_renyi(emb.P, emb.Q, alpha), petz_renyi(rho, sigma, alpha)


@dataclass(frozen=True)
class NsMoments:
    mean_P: complex
    mean_Q: complex
    second_P: float
    second_Q: float
    tr_rho_theta: float
    tr_sigma_theta: float
    tr_rho_theta2: float
    tr_sigma_theta2: float


def ns_moment_relations(rho, sigma, theta) -> NsMoments:
    """Embedding moments of ``Theta`` next to the matching quantum traces.

    Means agree exactly; embedding second moments are bounded above by the
    quantum ones.
    """
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    th = as_observable(theta).matrix
    emb = ns_embed(rho, sigma, th)
    T = emb.Theta
    th2 = th @ th
    return NsMoments(
        mean_P=complex(np.sum(emb.P * T)),
        mean_Q=complex(np.sum(emb.Q * T)),
        second_P=float(np.sum(emb.P * np.abs(T) ** 2)),
        second_Q=float(np.sum(emb.Q * np.abs(T) ** 2)),
        tr_rho_theta=rho.expectation(th),
        tr_sigma_theta=sigma.expectation(th),
        tr_rho_theta2=rho.expectation(th2),
        tr_sigma_theta2=sigma.expectation(th2),
    )
