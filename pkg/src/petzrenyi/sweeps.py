"""Randomized verification sweeps and report writing.

Each trial ``k`` draws its instance from ``RngStream(seed, k)``, so a sweep
gives the same rows in the same order whatever the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import partial

import numpy as np

from . import classical as cl
from .divergences import DEFAULT_ALPHAS, symmetric_petz_renyi
from .linalg import trace_distance
from .nussbaum_szkola import ns_divergence_identity
from .samplers import (
    RngStream,
    random_density,
    random_distribution,
    random_observable,
    random_trajectory_instance,
    saturating_pair,
)
from .uncertainty import (
    PreconditionError,
    omega_operator,
    s_statistic,
    verify_classical_turs,
    verify_exchange_tur,
    verify_generalized_holevo,
    verify_inverted_ur,
    verify_theorem,
)
from .bounds import bound_B

COLUMNS = ["trial", "dim", "alpha", "seed", "lhs", "rhs", "margin",
           "inequality-id", "T", "s", "epsilon-kernel"]
SATURATION_COLUMNS = ["eps", "alpha", "lhs", "rhs", "gap", "s"]
WHICH = ("theorem", "holevo", "inverted", "classical", "exchange",
         "ns-identity", "lemma1", "lemma2")
# rows whose margin is minus an absolute residual
IDENTITY_IDS = {"ns-identity", "exp-moment", "tanh2"}
DEFAULT_EPS_GRID = (0.1, 0.5, 1.0, 2.0, 3.0, 4.0)


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    dims: list = field(default_factory=lambda: [2, 3, 4, 5, 6])
    alphas: list = field(default_factory=lambda: list(DEFAULT_ALPHAS))
    trials: int = 1000
    seed: int = 0
    tolerance: float = 1e-9
    out: str | None = None
    format: str = "csv"
    jobs: int = 1
    deficient_rank: bool = True

    def validate(self):
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if not self.dims or any(d < 2 for d in self.dims):
            raise ConfigError("dims must be a non-empty list of integers >= 2")
        if not self.alphas or any(not a > 0 for a in self.alphas):
            raise ConfigError("alphas must be a non-empty list of positive numbers")
        if self.format not in ("csv", "json"):
            raise ConfigError("format must be csv or json")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")
        if not self.tolerance >= 0:
            raise ConfigError("tolerance must be non-negative")
        return self


def _row(k, dim, alpha, seed, lhs, rhs, margin, ident, T=None, s=None, eps=None):
    return {"trial": k, "dim": dim, "alpha": alpha, "seed": seed, "lhs": lhs,
            "rhs": rhs, "margin": margin, "inequality-id": ident, "T": T, "s": s,
            "epsilon-kernel": eps}


def _identity_margin(a, b):
    if math.isinf(a) or math.isinf(b):
        return 0.0 if a == b else -math.inf
    return -abs(a - b)


def quantum_instance(rng: RngStream, dims, deficient: bool):
    """Random ``(rho, sigma, theta)``; each state is rank-deficient with
    probability 1/2 when ``deficient`` is set."""
    d = int(dims[rng.integers(0, len(dims))])

    def rank():
        if deficient and rng.uniform() < 0.5:
            return rng.integers(1, d)
        return d

    rho = random_density(d, rank(), rng)
    sigma = random_density(d, rank(), rng)
    return rho, sigma, random_observable(d, rng)


def run_trial(which: str, cfg: SweepConfig, k: int) -> list[dict]:
    rng = RngStream(cfg.seed, k)
    seed = cfg.seed
    rows = []
    if which in ("theorem", "holevo", "inverted", "ns-identity"):
        rho, sigma, theta = quantum_instance(
            rng, cfg.dims, cfg.deficient_rank and which != "inverted"
        )
        d = rho.dim
        T = trace_distance(rho, sigma)
        eps = omega_operator(rho, sigma).epsilon
        if which == "theorem":
            s = s_statistic(rho, sigma, theta)
            for a in cfg.alphas:
                r = verify_theorem(rho, sigma, theta, a)
                rows.append(_row(k, d, a, seed, r.lhs, r.rhs, r.margin, "theorem", T, s, eps))
        elif which == "holevo":
            for i, a in enumerate(cfg.alphas):
                st = verify_generalized_holevo(rho, sigma, a)
                s = st.trace_bound.lhs
                if i == 0:
                    tb = st.trace_bound
                    rows.append(_row(k, d, None, seed, tb.lhs, tb.rhs, tb.margin, tb.label, T, s, eps))
                for r in (st.theorem, st.combined):
                    rows.append(_row(k, d, a, seed, r.lhs, r.rhs, r.margin, r.label, T, s, eps))
        elif which == "inverted":
            s = s_statistic(rho, sigma, theta)
            for a in cfg.alphas:
                r = verify_inverted_ur(rho, sigma, theta, a)
                rows.append(_row(k, d, a, seed, r.lhs, r.rhs, r.margin, "inverted-ur", T, s, eps))
        else:
            for a in cfg.alphas:
                c, q = ns_divergence_identity(rho, sigma, a)
                rows.append(_row(k, d, a, seed, c, q, _identity_margin(c, q), "ns-identity", T, None, eps))
        return rows

    n = int(cfg.dims[rng.integers(0, len(cfg.dims))])
    if which == "classical":
        P = random_distribution(n, rng)
        Q = random_distribution(n, rng)
        theta = rng.normal(n)
        T = cl.total_variation(P, Q)
        for a in cfg.alphas:
            r = verify_classical_turs(P, Q, theta, a)
            rows.append(_row(k, n, a, seed, r.lhs, r.rhs, r.margin, "classical-tur", T))
    elif which == "exchange":
        P, m, theta = random_trajectory_instance(2 * n, rng)
        try:
            r = verify_exchange_tur(P, m, theta)
        except PreconditionError:
            return rows
        rows.append(_row(k, 2 * n, 1.0, seed, r.lhs, r.rhs, r.margin, "exchange-tur"))
    elif which == "lemma1":
        P = random_distribution(n, rng)
        Q = random_distribution(n, rng)
        T = cl.total_variation(P, Q)
        delta = cl.triangular_discrimination(P, Q)
        for a in cfg.alphas:
            lhs, rhs = cl.lemma1_sides(P, Q, a)
            rows.append(_row(k, n, a, seed, lhs, rhs, lhs - rhs, "lemma1", T, math.sqrt(delta)))
        p, m = cl.pair_construction(P, Q)
        for a in cfg.alphas:
            lhs, rhs = cl.exp_moment_identity_check(p, m, a)
            # the moment reaches 1e7 at alpha = 3, beyond float64 resolution
            # for a 1e-10 residual, so the residual is taken in decimal
            margin = -cl.exp_moment_residual(p, m, a)
            rows.append(_row(k, 2 * n, a, seed, lhs, rhs, margin, "exp-moment", T))
        t2 = cl.tanh2_mean(p, m)
        rows.append(_row(k, 2 * n, None, seed, delta, t2, -abs(delta - t2), "tanh2", T))
    elif which == "lemma2":
        P = random_distribution(n, rng)
        Q = random_distribution(n, rng)
        Theta = rng.complex_normal(n)
        lhs, rhs = cl.lemma2_bound(P, Q, Theta)
        rows.append(_row(k, n, None, seed, lhs, rhs, lhs - rhs, "lemma2", cl.total_variation(P, Q)))
    else:
        raise ConfigError(f"unknown sweep {which!r}; expected one of {', '.join(WHICH)}")
    return rows


def run_sweep(which: str, cfg: SweepConfig) -> tuple[list[dict], dict]:
    """Run ``cfg.trials`` trials and return ``(rows, summary)``."""
    cfg.validate()
    if which not in WHICH:
        raise ConfigError(f"unknown sweep {which!r}; expected one of {', '.join(WHICH)}")
    t0 = time.perf_counter()
    task = partial(run_trial, which, cfg)
    if cfg.jobs == 1:
        chunks = map(task, range(cfg.trials))
        rows = [r for chunk in chunks for r in chunk]
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            chunksize = max(1, cfg.trials // (4 * cfg.jobs))
            rows = [r for chunk in pool.map(task, range(cfg.trials), chunksize=chunksize)
                    for r in chunk]
    summary = summarize(rows, cfg.tolerance)
    summary.update(which=which, config={k: v for k, v in asdict(cfg).items() if k != "out"},
                   runtime_s=time.perf_counter() - t0)
    return rows, summary


def summarize(rows, tolerance) -> dict:
    min_margin, max_abs, counts = {}, {}, {}
    failures = 0
    for r in rows:
        ident = r["inequality-id"]
        m = r["margin"]
        counts[ident] = counts.get(ident, 0) + 1
        min_margin[ident] = min(min_margin.get(ident, math.inf), m)
        if ident in IDENTITY_IDS:
            max_abs[ident] = max(max_abs.get(ident, 0.0), -m)
        if m < -tolerance:
            failures += 1
    out = {"rows": len(rows), "failures": failures, "tolerance": tolerance,
           "counts": counts, "min_margin": min_margin}
    if max_abs:
        out["max_abs_residual"] = max_abs
    return out


def run_saturation(eps_grid=DEFAULT_EPS_GRID, alphas=DEFAULT_ALPHAS, phi=1.0):
    """Gap ``|D~_alpha - B(alpha, s)|`` on the two-level saturating family."""
    t0 = time.perf_counter()
    rows = []
    for eps in eps_grid:
        rho, sigma, theta = saturating_pair(eps, phi)
        s = s_statistic(rho, sigma, theta)
        for a in alphas:
            lhs = symmetric_petz_renyi(rho, sigma, a)
            rhs = float(bound_B(a, s))
            rows.append({"eps": eps, "alpha": a, "lhs": lhs, "rhs": rhs,
                         "gap": abs(lhs - rhs), "s": s})
    summary = {"rows": len(rows), "max_gap": max((r["gap"] for r in rows), default=0.0),
               "runtime_s": time.perf_counter() - t0}
    return rows, summary


# ------------------------------------------------------------------ output


def fmt(v) -> str:
    """17 significant digits; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return str(v).lower()
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, float) or isinstance(v, np.floating):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.17g}"
    return str(v)


def rows_to_csv(rows, columns=COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def _json_safe(obj):
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return None if math.isnan(v) else v
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def to_json(obj) -> str:
    return json.dumps(_json_safe(obj), indent=2)


def write_report(rows, summary, out=None, format="csv", columns=COLUMNS):
    """Write rows to ``out`` (CSV or JSON) plus ``<out>.summary.json``.

    Returns the text written for the rows.
    """
    if format == "csv":
        text = rows_to_csv(rows, columns)
    else:
        text = to_json({"rows": rows, "summary": summary})
    if out is not None:
        with open(out, "w", newline="") as fh:
            fh.write(text)
        with open(f"{out}.summary.json", "w") as fh:
            fh.write(to_json(summary) + "\n")
    return text
