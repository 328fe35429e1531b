"""Dense Hermitian linear algebra shared by the rest of the package.

Density matrices are validated once and carry their spectral decomposition,
so every downstream matrix function (powers, logarithms, the trace norm)
reuses the same eigenbasis and the same support convention.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
# eigenvalues <= SUPPORT_RTOL * max|lambda| are treated as exact zeros
SUPPORT_RTOL = 1e-12


class ValidationError(ValueError):
    """Input matrix fails a structural check."""


class NotHermitian(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class TraceNotOne(ValidationError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in ascending order and the unitary whose columns are the
    matching eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        m = (v * self.eigenvalues) @ v.conj().T
        # exactly Hermitian, whatever the rounding in the product
        return 0.5 * (m + m.conj().T)


@dataclass(frozen=True)
class DensityMatrix:
    """Validated quantum state.

    ``spectrum`` holds the clipped, renormalized eigenvalues; ``matrix`` is
    rebuilt from them so that both views agree exactly.
    """

    matrix: np.ndarray = field(repr=False)
    spectrum: EigenDecomposition = field(repr=False)
    support_mask: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum.eigenvalues

    @property
    def eigenvectors(self) -> np.ndarray:
        return self.spectrum.eigenvectors

    @property
    def rank(self) -> int:
        return int(self.support_mask.sum())

    def support_projector(self) -> np.ndarray:
        v = self.eigenvectors[:, self.support_mask]
        return v @ v.conj().T

    def expectation(self, op) -> float:
        """``tr(rho @ op)`` for a Hermitian ``op`` (real part)."""
        op = _matrix_of(op)
        return float(np.real(np.sum(self.matrix * op.T)))


@dataclass(frozen=True)
class Observable:
    matrix: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _matrix_of(x) -> np.ndarray:
    if isinstance(x, (DensityMatrix, Observable)):
        return x.matrix
    return np.asarray(x, dtype=complex)


def _as_square(m) -> np.ndarray:
    a = np.array(_matrix_of(m), dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise ValidationError(f"expected a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def check_hermitian(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Return the Hermitian part of ``m`` after checking ``max|m - m^H| <= tol``."""
    a = _as_square(m)
    dev = np.max(np.abs(a - a.conj().T))
    if dev > tol:
        raise NotHermitian(f"matrix is not Hermitian (max deviation {dev:.3e} > {tol:.1e})")
    return 0.5 * (a + a.conj().T)


def hermitian_eigen(m, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Raises
    ------
    NotHermitian
        If ``m`` deviates from its adjoint by more than ``tol`` entrywise.
    """
    a = check_hermitian(m, tol)
    w, v = np.linalg.eigh(a)
    return EigenDecomposition(w, v)


def validate_density(
    m,
    tol: float | None = None,
    *,
    hermitian_tol: float = HERMITIAN_TOL,
    psd_tol: float = PSD_TOL,
    trace_tol: float = TRACE_TOL,
) -> DensityMatrix:
    """Check that ``m`` is a density matrix and return it as :class:`DensityMatrix`.

    ``tol`` overrides all three tolerances at once. Eigenvalues at or below
    ``SUPPORT_RTOL * max|lambda|`` (including small negative ones) are set to
    zero and the remaining spectrum is renormalized to unit trace.
    """
    if isinstance(m, DensityMatrix):
        return m
    if tol is not None:
        hermitian_tol = psd_tol = trace_tol = tol
    eig = hermitian_eigen(m, hermitian_tol)
    w = eig.eigenvalues
    if w[0] < -psd_tol:
        raise NotPSD(f"matrix has negative eigenvalue {w[0]:.6g}")
    tr = w.sum()
    if abs(tr - 1.0) > trace_tol:
        raise TraceNotOne(f"trace is {tr:.12g}, expected 1")
    scale = np.max(np.abs(w))
    support = w > SUPPORT_RTOL * scale
    w = np.where(support, w, 0.0)
    w = w / w.sum()
    eig = EigenDecomposition(w, eig.eigenvectors)
    return DensityMatrix(eig.reconstruct(), eig, support)


def as_observable(m, tol: float = HERMITIAN_TOL) -> Observable:
    if isinstance(m, Observable):
        return m
    return Observable(check_hermitian(m, tol))


def check_same_dim(*ops) -> int:
    dims = {_matrix_of(o).shape[0] for o in ops}
    if len(dims) != 1:
        raise DimensionMismatch(f"operands have different dimensions {sorted(dims)}")
    return dims.pop()


def spectral_function(rho: DensityMatrix, fn) -> np.ndarray:
    """Apply ``fn`` to the support eigenvalues; off-support eigenvalues map to 0."""
    w = rho.eigenvalues
    v = rho.eigenvectors
    fw = np.zeros_like(w)
    fw[rho.support_mask] = fn(w[rho.support_mask])
    return (v * fw) @ v.conj().T


def matrix_power(rho: DensityMatrix, a: float) -> np.ndarray:
    """``rho**a`` on the support of ``rho``; zero eigenvalues stay zero for any ``a``."""
    rho = validate_density(rho)
    return spectral_function(rho, lambda w: w ** a)


def matrix_log(rho: DensityMatrix) -> np.ndarray:
    """Natural logarithm of ``rho`` restricted to its support."""
    rho = validate_density(rho)
    return spectral_function(rho, np.log)


def trace_distance(rho, sigma) -> float:
    """Half the trace norm of ``rho - sigma``."""
    rho = validate_density(rho)
    sigma = validate_density(sigma)
    check_same_dim(rho, sigma)
    w = np.linalg.eigvalsh(rho.matrix - sigma.matrix)
    return float(0.5 * np.abs(w).sum())


# ---------------------------------------------------------------- matrix JSON


def matrix_from_json(obj) -> np.ndarray:
    """Parse ``{"dim": n, "re": [[...]], "im": [[...]]}`` into a complex array.

    ``im`` may be omitted for real matrices.
    """
    if not isinstance(obj, dict):
        raise ValidationError("matrix JSON must be an object with keys dim, re, im")
    try:
        n = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros((n, n))), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"bad matrix JSON: {exc}") from exc
    if re.shape != (n, n) or im.shape != (n, n):
        raise ValidationError(
            f"re/im must both be {n}x{n} arrays, got {re.shape} and {im.shape}"
        )
    return re + 1j * im


def matrix_to_json(m) -> dict:
    a = _as_square(m)
    return {"dim": a.shape[0], "re": a.real.tolist(), "im": a.imag.tolist()}


def load_matrix(path) -> np.ndarray:
    with open(Path(path)) as fh:
        return matrix_from_json(json.load(fh))
