"""The bound function ``B(alpha, x)``, its inverse, and the uncertainty function.

``B(alpha, x) = ln[cosh((2 alpha - 1) u) / cosh(u)] / (alpha - 1)`` with
``u = arctanh(x)``. Writing ``a = alpha u`` and ``b = (alpha - 1) u`` the
log-ratio equals ``2 arctanh(tanh(a) tanh(b))``, which stays accurate when
``alpha`` is close to 1 or ``x`` is small. For large arguments the product
of tanh's approaches 1 and we fall back to a difference of log-cosh values.
"""

from __future__ import annotations

import math

import numpy as np

X_MAX = 1.0 - 1e-15
ALPHA_ONE_TOL = 1e-8
BISECT_MAXITER = 200
BISECT_XTOL = 0.0  # bisect down to adjacent floats
_LN2 = math.log(2.0)


class DomainError(ValueError):
    pass


def _scalar_or_array(x):
    return float(x) if np.ndim(x) == 0 else x


def arctanh(x):
    """``0.5 ln((1 + x)/(1 - x))`` with ``x`` clamped to ``[-X_MAX, X_MAX]``."""
    x = np.clip(np.asarray(x, dtype=float), -X_MAX, X_MAX)
    return 0.5 * np.log1p(2.0 * x / (1.0 - x))


def log_cosh(u):
    """Overflow-free ``ln cosh(u)``, accurate for small ``u`` as well."""
    u = np.abs(np.asarray(u, dtype=float))
    small = u < 1.0
    us = np.where(small, u, 0.0)
    ul = np.where(small, 1.0, u)
    out_small = np.log1p(2.0 * np.sinh(0.5 * us) ** 2)
    out_large = ul + np.log1p(np.exp(-2.0 * ul)) - np.log(2.0)
    return np.where(small, out_small, out_large)


def log_cosh_ratio(alpha, u):
    """``g(alpha, u) = ln[cosh((2 alpha - 1) u) / cosh(u)]``."""
    alpha = np.asarray(alpha, dtype=float)
    u = np.asarray(u, dtype=float)
    prod = np.tanh(alpha * u) * np.tanh((alpha - 1.0) * u)
    direct = np.abs(prod) < 0.5
    # arctanh of a clipped product keeps the unused branch finite
    via_tanh = 2.0 * np.arctanh(np.where(direct, prod, 0.0))
    via_logcosh = log_cosh((2.0 * alpha - 1.0) * u) - log_cosh(u)
    return np.where(direct, via_tanh, via_logcosh)


def _log_cosh_scalar(u: float) -> float:
    u = abs(u)
    if u < 1.0:
        return math.log1p(2.0 * math.sinh(0.5 * u) ** 2)
    return u + math.log1p(math.exp(-2.0 * u)) - _LN2


def _bound_B_scalar(alpha: float, x: float) -> float:
    """Scalar twin of :func:`bound_B` on plain floats, without validation."""
    u = 0.5 * math.log1p(2.0 * x / (1.0 - x))
    if abs(alpha - 1.0) <= ALPHA_ONE_TOL:
        return 2.0 * x * u
    prod = math.tanh(alpha * u) * math.tanh((alpha - 1.0) * u)
    if abs(prod) < 0.5:
        g = 2.0 * math.atanh(prod)
    else:
        g = _log_cosh_scalar((2.0 * alpha - 1.0) * u) - _log_cosh_scalar(u)
    return g / (alpha - 1.0)


def _bisect_scalar(fn, y: float, lo: float, hi: float, maxiter=BISECT_MAXITER) -> float:
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if fn(mid) < y:
            lo = mid
        else:
            hi = mid
    return lo if abs(fn(lo) - y) <= abs(fn(hi) - y) else hi


def _check_alpha(alpha):
    if np.any(np.asarray(alpha) <= 0):
        raise DomainError(f"alpha must be positive, got {alpha}")


def bound_B(alpha, x):
    """Evaluate ``B(alpha, x)`` for ``alpha > 0`` and ``0 <= x < 1``.

    For ``|alpha - 1| <= 1e-8`` the analytic limit ``2 x arctanh(x)`` is
    returned. Broadcasts over array arguments.

    Raises
    ------
    DomainError
        If ``alpha <= 0`` or ``x`` lies outside ``[0, 1)``.
    """
    _check_alpha(alpha)
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0) or np.any(x_arr >= 1) or np.any(~np.isfinite(x_arr)):
        raise DomainError(f"x must lie in [0, 1), got {x}")
    a = np.asarray(alpha, dtype=float)
    u = arctanh(x_arr)
    near_one = np.abs(a - 1.0) <= ALPHA_ONE_TOL
    denom = np.where(near_one, 1.0, a - 1.0)
    general = log_cosh_ratio(a, u) / denom
    limit = 2.0 * x_arr * u
    return _scalar_or_array(np.where(near_one, limit, general))


def bound_B_clamped(alpha, x):
    """``bound_B`` with ``x`` clipped into ``[0, X_MAX]``.

    Used by the verifiers, where a statistic may round to exactly 1.
    """
    return bound_B(alpha, np.clip(x, 0.0, X_MAX))


def _bisect_increasing(fn, y, lo, hi, maxiter=BISECT_MAXITER, xtol=BISECT_XTOL):
    """Vectorized bisection for ``fn(x) = y`` with ``fn`` increasing on ``[lo, hi]``."""
    y = np.asarray(y, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), y.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), y.shape).copy()
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        # stop once the bracket is below xtol or cannot be split further
        if np.all((hi - lo < xtol) | (mid == lo) | (mid == hi)):
            break
        below = fn(mid) < y
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
    # pick the endpoint with the smaller residual
    r_lo = np.abs(fn(lo) - y)
    r_hi = np.abs(fn(hi) - y)
    return np.where(r_lo <= r_hi, lo, hi)


def bound_B_inverse(alpha, y, full_output=False):
    """Solve ``B(alpha, x) = y`` for ``x`` in ``[0, 1)`` by bisection.

    Parameters
    ----------
    alpha : float
        Positive order.
    y : float or array_like
        Target value(s), ``y >= 0``. ``+inf`` maps to ``X_MAX``.
    full_output : bool
        If True, also return a boolean ``saturated`` flag (array for array
        input) marking targets above ``B(alpha, X_MAX)``, where ``X_MAX``
        is returned.
    """
    _check_alpha(alpha)
    y_arr = np.asarray(y, dtype=float)
    if np.any(y_arr < 0) or np.any(np.isnan(y_arr)):
        raise DomainError(f"y must be non-negative, got {y}")
    top = bound_B(alpha, X_MAX)
    saturated = y_arr >= top
    target = np.where(saturated, top, y_arr)
    # B(alpha, x) >= 2 min(alpha, 1) x^2 brackets the root for small targets
    hi = np.minimum(X_MAX, 1.5 * np.sqrt(target / (2.0 * min(float(alpha), 1.0))))
    if np.ndim(target) == 0:
        # plain-float loop; numpy overhead dominates for a single target
        a = float(alpha)
        x = _bisect_scalar(lambda t: _bound_B_scalar(a, t), float(target), 0.0, float(hi))
    else:
        x = _bisect_increasing(lambda t: bound_B(alpha, t), target, 0.0, hi)
    x = np.where(saturated, X_MAX, np.where(y_arr == 0, 0.0, x))
    x = _scalar_or_array(x)
    if full_output:
        return x, (bool(saturated) if np.ndim(saturated) == 0 else saturated)
    return x


def uncertainty_f(alpha, D):
    """``f(alpha, D) = 1 / B^{-1}(alpha, D)**2 - 1``.

    ``D = 0`` gives ``+inf``; ``D = +inf`` gives 0 up to the clamp on
    ``B^{-1}``.
    """
    D_arr = np.asarray(D, dtype=float)
    if np.any(D_arr < 0):
        raise DomainError(f"D must be non-negative, got {D}")
    x = np.asarray(bound_B_inverse(alpha, D_arr))
    with np.errstate(divide="ignore"):
        out = np.where(D_arr == 0, np.inf, 1.0 / x**2 - 1.0)
    out = np.where(np.isinf(D_arr), 0.0, out)
    return _scalar_or_array(out)


# α = 1 and α = 1/2 have closed or semi-closed forms, used as cross-checks


def entropy_h(x):
    """``h(x) = x tanh(x / 2)``, increasing on ``x >= 0``."""
    x = np.asarray(x, dtype=float)
    return _scalar_or_array(x * np.tanh(0.5 * x))


def entropy_h_inverse(y):
    """Inverse ``g`` of :func:`entropy_h` on ``[0, inf)``."""
    y = np.asarray(y, dtype=float)
    if np.any(y < 0):
        raise DomainError("h^{-1} needs y >= 0")
    # h(x) >= x - 2, and h(x) >= 0.38 x^2 on [0, 2]
    hi = np.where(y >= 1.0, y + 2.0, 2.0 * np.sqrt(y))
    if y.ndim == 0:
        x = _bisect_scalar(lambda t: t * math.tanh(0.5 * t), float(y), 0.0, float(hi))
    else:
        x = _bisect_increasing(entropy_h, y, 0.0, hi)
    return _scalar_or_array(np.where(y == 0, 0.0, x))


def uncertainty_f_alpha1(D):
    """``1 / sinh(g(D)/2)**2`` with ``g`` the inverse of ``x tanh(x/2)``."""
    g = np.asarray(entropy_h_inverse(D))
    with np.errstate(divide="ignore"):
        return _scalar_or_array(1.0 / np.sinh(0.5 * g) ** 2)


def uncertainty_f_half(D):
    """``F / (1 - F)`` with ``F = exp(-D)``, the Holevo-fidelity form."""
    D = np.asarray(D, dtype=float)
    with np.errstate(divide="ignore"):
        return _scalar_or_array(1.0 / np.expm1(D))


def pinsker_rhs(alpha, T):
    """``2 min(alpha, 1) T**2``."""
    _check_alpha(alpha)
    return _scalar_or_array(2.0 * np.minimum(alpha, 1.0) * np.asarray(T, dtype=float) ** 2)
