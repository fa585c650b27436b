"""Command-line front end.

Subcommands: ``fit`` (classical estimators), ``bayes`` (posterior
sampling), ``simulate`` (Monte Carlo study) and ``compare`` (model
ranking plus survival overlays).  JSON is the canonical output; CSV
tables, text tables and PNG figures are derived views.  Every output
carries a manifest (command line, dataset fingerprint, configuration
echo, seed, version, timestamp).

Exit codes: 0 success; 2 at least one estimator failed or was infeasible
(results still written); 3 the convergence diagnostic rejected the chain
(results still written); 64 usage or unreadable/malformed input;
65 nonpositive data value.
"""

from __future__ import annotations

import argparse
import csv as csv_mod
import datetime as _dt
import hashlib
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .bayes import McmcConfig, mh_sample, posterior_mean_diagnostic, posterior_summary
from .comparison import MODELS, compare_models, format_report, survival_overlay
from .datasets import BUNDLED
from .distribution import FrechetParams, Sample
from .errors import FrechetFitError
from .estimators import Method, SolverConfig, fit
from .simulation import (
    CLASSICAL_METHODS,
    StudyConfig,
    rows_as_dicts,
    run_study,
    write_csv,
    write_json,
)

EXIT_OK = 0
EXIT_ESTIMATOR_FAILURE = 2
EXIT_DIAGNOSTIC_FAILURE = 3
EXIT_USAGE = 64
EXIT_DATA = 65

SEED_ENV_VAR = "FRECHETFIT_SEED"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with 2; we reserve 2
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


# ---------------------------------------------------------------------------
# Data loading
# ---------------------------------------------------------------------------


def _parse_values(tokens_per_line, source: str) -> list[float]:
    values = []
    for lineno, tokens in tokens_per_line:
        for tok in tokens:
            try:
                v = float(tok)
            except ValueError:
                raise CliError(EXIT_USAGE, f"{source}: line {lineno}: not a number: {tok!r}")
            if not math.isfinite(v) or v <= 0:
                raise CliError(EXIT_DATA, f"{source}: line {lineno}: nonpositive value {tok}")
            values.append(v)
    if len(values) < 2:
        raise CliError(EXIT_DATA, f"{source}: need at least 2 positive values, got {len(values)}")
    return values


def load_dataset(spec: str, fmt: str = "plain", column: str | None = None) -> tuple[Sample, dict]:
    """Resolve ``bundled:NAME`` or a file path into a Sample plus manifest info."""
    if spec.startswith("bundled:"):
        name = spec.split(":", 1)[1].lower()
        if name not in BUNDLED:
            raise CliError(EXIT_USAGE, f"unknown bundled dataset {name!r}; choose from {sorted(BUNDLED)}")
        values = list(BUNDLED[name])
        info = {"source": spec, "n": len(values), "sha256": _fingerprint(values)}
        return Sample(values), info
    try:
        with open(spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(EXIT_USAGE, f"cannot read {spec!r}: {exc}")
    if fmt == "csv":
        rows = list(csv_mod.reader(text.splitlines()))
        if not rows:
            raise CliError(EXIT_USAGE, f"{spec}: empty CSV")
        header = rows[0]
        if column is None:
            raise CliError(EXIT_USAGE, "--column is required with --format csv")
        if column not in header:
            raise CliError(EXIT_USAGE, f"{spec}: line 1: no column named {column!r}")
        idx = header.index(column)
        lines = []
        for lineno, row in enumerate(rows[1:], start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if idx >= len(row) or not row[idx].strip():
                raise CliError(EXIT_USAGE, f"{spec}: line {lineno}: missing value in column {column!r}")
            lines.append((lineno, [row[idx].strip()]))
        values = _parse_values(lines, spec)
    elif fmt == "plain":
        lines = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            lines.append((lineno, stripped.replace(",", " ").split()))
        values = _parse_values(lines, spec)
    else:
        raise CliError(EXIT_USAGE, f"unknown format {fmt!r}")
    info = {"source": spec, "n": len(values), "sha256": _fingerprint(values)}
    return Sample(values), info


def _fingerprint(values) -> str:
    canon = "\n".join(repr(float(v)) for v in values).encode()
    return hashlib.sha256(canon).hexdigest()


def _manifest(command: str, dataset_info: dict | None, config_echo: dict, seed) -> dict:
    return {
        "command": command,
        "dataset": dataset_info,
        "config": config_echo,
        "seed": seed,
        "version": __version__,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }


def _write_json(doc: dict, out: str | None) -> None:
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise CliError(EXIT_USAGE, f"{SEED_ENV_VAR} must be an integer, got {env!r}")
    return 2018


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_fit(args) -> int:
    sample, info = load_dataset(args.data, args.format, args.column)
    methods = [m.strip().lower() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in CLASSICAL_METHODS:
            raise CliError(EXIT_USAGE, f"unknown method {m!r}; choose from {', '.join(CLASSICAL_METHODS)}")
    cfg = SolverConfig(
        alpha_bracket=(args.bracket_lo, args.bracket_hi),
        tol=args.tol,
        max_iter=args.max_iter,
    )
    records, any_failed = [], False
    for m in methods:
        try:
            est = fit(sample, m, cfg)
            rec = {
                "method": m,
                "lam": est.params.lam,
                "alpha": est.params.alpha,
                "ci95": None
                if est.ci95 is None
                else {"lam": list(est.ci95[0]), "alpha": list(est.ci95[1])},
                "converged": est.diagnostics.converged,
                "iterations": est.diagnostics.iterations,
                "objective": est.diagnostics.objective,
                "stationarity": est.diagnostics.stationarity,
                "error": None,
            }
            if not est.diagnostics.converged:
                any_failed = True
        except FrechetFitError as exc:
            rec = {"method": m, "error": {"type": type(exc).__name__, "message": str(exc)}}
            any_failed = True
        records.append(rec)
    doc = {
        "estimates": records,
        "manifest": _manifest(
            "fit", info, {"methods": methods, "tol": cfg.tol, "alpha_bracket": list(cfg.alpha_bracket)},
            None,
        ),
    }
    _write_json(doc, args.out)
    if args.out:
        done = sum(1 for r in records if r.get("error") is None)
        print(f"fit: {done}/{len(records)} methods converged -> {args.out}")
    return EXIT_ESTIMATOR_FAILURE if any_failed else EXIT_OK


def _cmd_bayes(args) -> int:
    sample, info = load_dataset(args.data, args.format, args.column)
    seed = _resolve_seed(args)
    cfg = McmcConfig(
        iterations=args.iterations,
        burn_in=args.burn_in,
        jump=args.thin,
        kernel_b=args.kernel_b,
        seed=seed,
        geweke_level=args.geweke_level,
    )
    chain = mh_sample(sample, cfg)
    point, (lam_ci, alpha_ci) = posterior_summary(chain, sample)
    ratio, minimum = posterior_mean_diagnostic(sample)
    from scipy.stats import norm

    z_crit = float(norm.ppf(0.5 * (1.0 + cfg.geweke_level)))
    geweke_ok = abs(chain.geweke_z) < z_crit
    doc = {
        "lam_median": point.lam,
        "alpha_median": point.alpha,
        "cri95": {"lam": list(lam_ci), "alpha": list(alpha_ci)},
        "acceptance_rate": chain.acceptance_rate,
        "geweke_z": chain.geweke_z,
        "geweke_accepted": bool(geweke_ok),
        "chain_length": int(chain.alpha_draws.size),
        "mean_proper": chain.mean_proper,
        "mean_diagnostic": {"product_ratio": ratio, "sample_min": minimum},
        "manifest": _manifest(
            "bayes",
            info,
            {
                "iterations": cfg.iterations,
                "burn_in": cfg.burn_in,
                "jump": cfg.jump,
                "kernel_b": cfg.kernel_b,
                "geweke_level": cfg.geweke_level,
            },
            seed,
        ),
    }
    _write_json(doc, args.out)
    if not chain.mean_proper:
        print(
            "warning: posterior mean of lam is provably infinite for this dataset "
            f"(product ratio {ratio:.6g} <= sample min {minimum:.6g}); medians reported",
            file=sys.stderr,
        )
    if args.out:
        print(
            f"bayes: lam={point.lam:.6g} alpha={point.alpha:.6g} "
            f"accept={chain.acceptance_rate:.3f} geweke_z={chain.geweke_z:.3f} -> {args.out}"
        )
    return EXIT_OK if geweke_ok else EXIT_DIAGNOSTIC_FAILURE


def _cmd_simulate(args) -> int:
    seed = _resolve_seed(args)
    try:
        sizes = tuple(int(x) for x in args.n.split(","))
    except ValueError:
        raise CliError(EXIT_USAGE, f"--n must be a comma-separated list of integers, got {args.n!r}")
    methods = tuple(m.strip().lower() for m in args.methods.split(",") if m.strip())
    try:
        cfg = StudyConfig(
            true_params=FrechetParams(args.lam, args.alpha),
            sample_sizes=sizes,
            replications=args.reps,
            methods=methods,
            master_seed=seed,
            workers=args.workers,
            mcmc=McmcConfig(
                iterations=args.iterations, burn_in=args.burn_in, jump=args.thin, seed=seed
            ),
        )
    except (ValueError, FrechetFitError) as exc:
        raise CliError(EXIT_USAGE, f"invalid study configuration: {exc}")
    result = run_study(cfg)
    manifest = _manifest(
        "simulate",
        None,
        {
            "lam": args.lam,
            "alpha": args.alpha,
            "sample_sizes": list(sizes),
            "replications": args.reps,
            "methods": list(methods),
            "workers": args.workers,
        },
        seed,
    )
    prefix = args.out_prefix
    write_csv(result, f"{prefix}.csv")
    write_json(result, f"{prefix}.json", manifest)
    produced = [f"{prefix}.csv", f"{prefix}.json"]
    if not args.no_plot:
        from .plots import save_study_plot

        save_study_plot(result, f"{prefix}.png")
        produced.append(f"{prefix}.png")
    print(f"simulate: {len(result.rows)} rows -> {', '.join(produced)}")
    return EXIT_OK


def _cmd_compare(args) -> int:
    sample, info = load_dataset(args.data, args.format, args.column)
    report = compare_models(sample)
    overlay = survival_overlay(sample, {m: report.rows[m].fit for m in MODELS}, args.grid_size)
    manifest = _manifest("compare", info, {"grid_size": args.grid_size}, None)
    doc = {
        "n": report.n,
        "models": {
            name: {
                "params": row.fit.params,
                "loglik": row.fit.loglik,
                "converged": row.fit.converged,
                "k": row.k,
                "aic": row.criteria.aic,
                "bic": row.criteria.bic,
                "aicc": row.criteria.aicc,
            }
            for name, row in report.rows.items()
        },
        "ranking": {crit: list(names) for crit, names in report.ranking.items()},
        "manifest": manifest,
    }
    prefix = args.out_prefix
    _write_json(doc, f"{prefix}.json")
    with open(f"{prefix}_overlay.csv", "w", newline="") as fh:
        w = csv_mod.writer(fh)
        w.writerow(["t", "empirical"] + list(MODELS))
        for i, t in enumerate(overlay.grid):
            w.writerow(
                [f"{t:.12g}", f"{overlay.empirical[i]:.12g}"]
                + [f"{overlay.fitted[m][i]:.12g}" for m in MODELS]
            )
    produced = [f"{prefix}.json", f"{prefix}_overlay.csv"]
    if not args.no_plot:
        from .plots import save_survival_plot

        save_survival_plot(overlay, f"{prefix}_survival.png", title=info["source"])
        produced.append(f"{prefix}_survival.png")
    table = format_report(report, label=info["source"][:11])
    print(table)
    print(f"compare: best by AIC = {report.best('aic')} -> {', '.join(produced)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_data_args(p):
    p.add_argument("--data", required=True,
                   help="dataset: 'bundled:NAME' (may, june, july, august, september) or a file path")
    p.add_argument("--format", choices=["plain", "csv"], default="plain",
                   help="file layout: whitespace/comma separated values, or CSV with --column")
    p.add_argument("--column", default=None, help="column name when --format csv")


def build_parser() -> _Parser:
    parser = _Parser(prog="frechetfit", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="classical point estimates", allow_abbrev=False)
    _add_data_args(p_fit)
    p_fit.add_argument("--methods", default=",".join(CLASSICAL_METHODS),
                       help="comma-separated subset of: " + ", ".join(CLASSICAL_METHODS))
    p_fit.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    p_fit.add_argument("--bracket-lo", type=float, default=0.1)
    p_fit.add_argument("--bracket-hi", type=float, default=10.0)
    p_fit.add_argument("--tol", type=float, default=1e-12)
    p_fit.add_argument("--max-iter", type=int, default=2000)
    p_fit.set_defaults(func=_cmd_fit)

    p_bayes = sub.add_parser("bayes", help="posterior medians and credible intervals",
                             allow_abbrev=False)
    _add_data_args(p_bayes)
    p_bayes.add_argument("--iterations", type=int, default=15000)
    p_bayes.add_argument("--burn-in", type=int, default=500)
    p_bayes.add_argument("--thin", type=int, default=5)
    p_bayes.add_argument("--kernel-b", type=float, default=1.0)
    p_bayes.add_argument("--geweke-level", type=float, default=0.95)
    p_bayes.add_argument("--seed", type=int, default=None,
                         help=f"RNG seed (default: ${SEED_ENV_VAR} or 2018)")
    p_bayes.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    p_bayes.set_defaults(func=_cmd_bayes)

    p_sim = sub.add_parser("simulate", help="Monte Carlo study of estimator quality",
                           allow_abbrev=False)
    p_sim.add_argument("--lambda", dest="lam", type=float, default=2.0)
    p_sim.add_argument("--alpha", type=float, default=4.0)
    p_sim.add_argument("--n", default="20,50,100", help="comma-separated sample sizes")
    p_sim.add_argument("--reps", type=int, default=1000)
    p_sim.add_argument("--methods", default=",".join(CLASSICAL_METHODS),
                       help="classical methods and/or 'bayes'")
    p_sim.add_argument("--iterations", type=int, default=5500, help="MCMC iterations for 'bayes'")
    p_sim.add_argument("--burn-in", type=int, default=500)
    p_sim.add_argument("--thin", type=int, default=5)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--seed", type=int, default=None,
                       help=f"master seed (default: ${SEED_ENV_VAR} or 2018)")
    p_sim.add_argument("--out-prefix", default="study", help="prefix for .csv/.json/.png outputs")
    p_sim.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p_sim.set_defaults(func=_cmd_simulate)

    p_cmp = sub.add_parser("compare", help="information criteria across candidate models",
                           allow_abbrev=False)
    _add_data_args(p_cmp)
    p_cmp.add_argument("--grid-size", type=int, default=200)
    p_cmp.add_argument("--out-prefix", default="compare", help="prefix for output files")
    p_cmp.add_argument("--no-plot", action="store_true", help="skip the PNG figure")
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"frechetfit: error: {exc}", file=sys.stderr)
        return exc.code
    except FrechetFitError as exc:
        print(f"frechetfit: error: {exc}", file=sys.stderr)
        return EXIT_DATA


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
