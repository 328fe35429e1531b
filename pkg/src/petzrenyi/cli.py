"""Command-line front end.

    petzrenyi bound --alpha 0.5 --x 0.6
    petzrenyi verify theorem --trials 1000 --dims 2,3,4 --seed 7 --out theorem.csv
    petzrenyi saturation --out sat.csv
    petzrenyi dump-ns --rho rho.json --sigma sigma.json [--theta theta.json]

``verify`` and ``saturation`` exit with 0 iff no margin falls below
``-tol``. The seed falls back to the config file, then ``$PRL_SEED``, then 0.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from decimal import ROUND_HALF_EVEN, Decimal

import numpy as np

from . import bounds
from .linalg import ValidationError, load_matrix, validate_density, as_observable
from .nussbaum_szkola import ns_embed
from .sweeps import (
    DEFAULT_EPS_GRID,
    SATURATION_COLUMNS,
    WHICH,
    ConfigError,
    SweepConfig,
    run_saturation,
    run_sweep,
    to_json,
    write_report,
)
from .divergences import DEFAULT_ALPHAS


def fmt15(v: float) -> str:
    """15 significant digits, trailing zeros kept (``0.446287102628420``)."""
    v = float(v)
    if v == 0:
        return "0"
    if not math.isfinite(v):
        return str(v)
    # round the shortest repr, not the binary expansion
    d = Decimal(repr(v))
    e = d.adjusted()
    if -5 <= e < 15:
        return str(d.quantize(Decimal(1).scaleb(e - 14), rounding=ROUND_HALF_EVEN))
    return f"{v:.14e}"


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petzrenyi",
        description="Symmetric Petz-Rényi bounds and their numerical verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate B(alpha, x), its inverse, f or the Pinsker bound")
    b.add_argument("--alpha", type=float, required=True)
    mode = b.add_mutually_exclusive_group(required=True)
    mode.add_argument("--x", type=float, help="print B(alpha, x)")
    mode.add_argument("--inverse", type=float, metavar="Y", help="print B^{-1}(alpha, Y)")
    mode.add_argument("--f", type=float, metavar="D", help="print f(alpha, D)")
    mode.add_argument("--pinsker", type=float, metavar="T", help="print 2 min(alpha,1) T^2")

    v = sub.add_parser("verify", help="run a randomized verification sweep")
    v.add_argument("which", choices=WHICH)
    v.add_argument("--config", help="JSON file with SweepConfig fields")
    v.add_argument("--dims", type=_ints)
    v.add_argument("--alphas", type=_floats)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--tol", type=float)
    v.add_argument("--jobs", type=int)
    v.add_argument("--out")
    v.add_argument("--format", choices=("csv", "json"))
    v.add_argument("--full-rank", action="store_true", help="sample only full-rank states")

    s = sub.add_parser("saturation", help="scan the two-level saturating family")
    s.add_argument("--eps", type=_floats, default=list(DEFAULT_EPS_GRID))
    s.add_argument("--alphas", type=_floats, default=list(DEFAULT_ALPHAS))
    s.add_argument("--phi", type=float, default=1.0)
    s.add_argument("--seed", type=int, help="recorded in the summary; the scan is deterministic")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--out")
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    d = sub.add_parser("dump-ns", help="write the Nussbaum-Szkoła embedding as JSON")
    d.add_argument("--rho", required=True)
    d.add_argument("--sigma", required=True)
    d.add_argument("--theta")
    d.add_argument("--out")
    return parser


def cmd_bound(args) -> int:
    a = args.alpha
    if args.x is not None:
        value = bounds.bound_B(a, args.x)
    elif args.inverse is not None:
        value = bounds.bound_B_inverse(a, args.inverse)
    elif args.f is not None:
        value = bounds.uncertainty_f(a, args.f)
    else:
        if not 0 <= args.pinsker <= 1:
            raise bounds.DomainError("T must lie in [0, 1]")
        value = bounds.pinsker_rhs(a, args.pinsker)
    print(fmt15(value))
    return 0


def sweep_config(args) -> SweepConfig:
    cfg = {}
    if args.config:
        with open(args.config) as fh:
            cfg = json.load(fh)
        unknown = set(cfg) - set(SweepConfig.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    overrides = {"dims": args.dims, "alphas": args.alphas, "trials": args.trials,
                 "seed": args.seed, "tolerance": args.tol, "jobs": args.jobs,
                 "out": args.out, "format": args.format}
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    if "seed" not in cfg:
        env = os.environ.get("PRL_SEED")
        try:
            cfg["seed"] = int(env) if env else 0
        except ValueError:
            raise ConfigError(f"PRL_SEED must be an integer, got {env!r}")
    if args.full_rank:
        cfg["deficient_rank"] = False
    return SweepConfig(**cfg).validate()


def cmd_verify(args) -> int:
    cfg = sweep_config(args)
    rows, summary = run_sweep(args.which, cfg)
    text = write_report(rows, summary, cfg.out, cfg.format)
    if cfg.out is None:
        sys.stdout.write(text)
        sys.stderr.write(to_json(summary) + "\n")
    else:
        print(to_json({k: summary[k] for k in ("which", "rows", "failures", "min_margin")}))
    return 0 if summary["failures"] == 0 else 1


def cmd_saturation(args) -> int:
    rows, summary = run_saturation(args.eps, args.alphas, args.phi)
    summary.update(tolerance=args.tol, seed=args.seed,
                   failures=sum(r["gap"] > args.tol for r in rows))
    text = write_report(rows, summary, args.out, args.format, SATURATION_COLUMNS)
    if args.out is None:
        sys.stdout.write(text)
        sys.stderr.write(to_json(summary) + "\n")
    else:
        print(to_json(summary))
    return 0 if summary["failures"] == 0 else 1


def _load(path, what):
    try:
        m = load_matrix(path)
        return validate_density(m) if what != "theta" else as_observable(m)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: JSON parse error: {exc}") from exc
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def cmd_dump_ns(args) -> int:
    rho = _load(args.rho, "rho")
    sigma = _load(args.sigma, "sigma")
    theta = _load(args.theta, "theta") if args.theta else None
    emb = ns_embed(rho, sigma, theta)
    doc = {
        "dim": emb.dim,
        "layout": "row-major over (i, j); i indexes rho eigenvectors and j sigma "
                  "eigenvectors, each sorted by descending eigenvalue",
        "rho_eigenvalues": emb.rho_eigenvalues.tolist(),
        "sigma_eigenvalues": emb.sigma_eigenvalues.tolist(),
        "P": emb.P.tolist(),
        "Q": emb.Q.tolist(),
        "Theta": None if emb.Theta is None else {
            "re": np.real(emb.Theta).tolist(), "im": np.imag(emb.Theta).tolist()},
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


COMMANDS = {"bound": cmd_bound, "verify": cmd_verify,
            "saturation": cmd_saturation, "dump-ns": cmd_dump_ns}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
