"""Monte Carlo study of estimator quality.

For each requested sample size, ``replications`` datasets are drawn from a
known parameter pair and every requested method is refit.  Reported per
(method, size, parameter): the mean relative estimate (average of
estimate/truth), the mean squared error, the fraction of 95% intervals
covering the truth (methods that produce intervals only), and the number
of replications where the fit was infeasible or failed to converge.
Failed fits are excluded from the averages and surface in the failure
count so either convention can be reconstructed.

Replications use independent derived seed streams, so results are
identical whether run serially or across worker processes.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from concurrent.futures import ProcessPoolExecutor

import math
import numpy as np

from . import bayes
from .distribution import FrechetParams, rvs
from .errors import FrechetFitError
from .estimators import DEFAULT_CONFIG, Method, SolverConfig, fit
from .bayes import McmcConfig

__all__ = [
    "CLASSICAL_METHODS",
    "StudyConfig",
    "StudyRow",
    "StudyResult",
    "derive_seed",
    "run_study",
    "write_csv",
    "write_json",
]

CLASSICAL_METHODS = tuple(m.value for m in Method)
#: Methods whose fits carry a 95% interval (asymptotic or credible).
INTERVAL_METHODS = ("mle", "mps", "bayes")


@dataclass(frozen=True)
class StudyConfig:
    true_params: FrechetParams = FrechetParams(2.0, 4.0)
    sample_sizes: tuple[int, ...] = (20, 50, 100)
    replications: int = 1000
    methods: tuple[str, ...] = CLASSICAL_METHODS
    master_seed: int = 2018
    workers: int = 1
    solver: SolverConfig = DEFAULT_CONFIG
    mcmc: McmcConfig = field(default_factory=McmcConfig)

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if any(n < 2 for n in self.sample_sizes) or not self.sample_sizes:
            raise ValueError("all sample sizes must be >= 2")
        bad = [m for m in self.methods if m != "bayes" and m not in CLASSICAL_METHODS]
        if bad or not self.methods:
            raise ValueError(f"unknown methods: {bad}")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class StudyRow:
    method: str
    n: int
    parameter: str  # "lam" or "alpha"
    mre: float
    mse: float
    coverage: float | None
    failures: int


@dataclass(frozen=True)
class StudyResult:
    config: StudyConfig
    rows: tuple[StudyRow, ...]

    def row(self, method: str, n: int, parameter: str) -> StudyRow:
        for r in self.rows:
            if (r.method, r.n, r.parameter) == (method, n, parameter):
                return r
        raise KeyError((method, n, parameter))


def _derive(*keys: int) -> int:
    return int(np.random.SeedSequence([int(k) for k in keys]).generate_state(1, np.uint64)[0])


def derive_seed(master: int, replication: int, n: int) -> int:
    """Stable hash-split of (master, replication, n) into a seed.

    Distinct inputs give distinct, uncorrelated streams; the same inputs
    always give the same seed.
    """
    return _derive(master, replication, n)


def _fit_once(method, s, cfg, rep, n):
    """One (method, sample) fit -> (lam, alpha, lam_covered, alpha_covered).

    Coverage entries are None for methods without intervals.  Raises on
    infeasible/non-converged fits; the caller counts those as failures.
    """
    truth = cfg.true_params
    if method == "bayes":
        chain_seed = _derive(cfg.master_seed, rep, n, 1)
        mcfg = McmcConfig(
            iterations=cfg.mcmc.iterations,
            burn_in=cfg.mcmc.burn_in,
            jump=cfg.mcmc.jump,
            kernel_b=cfg.mcmc.kernel_b,
            seed=chain_seed,
            geweke_level=cfg.mcmc.geweke_level,
        )
        chain = bayes.mh_sample(s, mcfg)
        point, (lam_ci, alpha_ci) = bayes.posterior_summary(chain, s)
        return (
            point.lam,
            point.alpha,
            lam_ci[0] <= truth.lam <= lam_ci[1],
            alpha_ci[0] <= truth.alpha <= alpha_ci[1],
        )
    est = fit(s, method, cfg.solver)
    if not est.diagnostics.converged:
        raise FrechetFitError(f"{method} did not converge")
    cov_lam = cov_alpha = None
    if est.ci95 is not None:
        (llo, lhi), (alo, ahi) = est.ci95
        cov_lam = llo <= truth.lam <= lhi
        cov_alpha = alo <= truth.alpha <= ahi
    return est.params.lam, est.params.alpha, cov_lam, cov_alpha


def _replicate(args):
    """Worker body: all methods on one simulated dataset."""
    cfg, n, rep, fitters = args
    rng = np.random.default_rng(derive_seed(cfg.master_seed, rep, n))
    s = rvs(cfg.true_params, n, rng)
    out = {}
    for method in cfg.methods:
        try:
            if fitters is not None and method in fitters:
                out[method] = fitters[method](s, cfg)
            else:
                out[method] = _fit_once(method, s, cfg, rep, n)
        except FrechetFitError:
            out[method] = None
    return n, out


def run_study(cfg: StudyConfig, fitters=None) -> StudyResult:
    """Run the full study; deterministic given ``cfg.master_seed``.

    ``fitters`` optionally overrides the fit for selected method names with
    a callable ``(sample, cfg) -> (lam, alpha, cov_lam, cov_alpha)``;
    intended for testing the aggregation itself.
    """
    work = [(cfg, n, rep, fitters) for n in cfg.sample_sizes for rep in range(cfg.replications)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_replicate, work, chunksize=max(1, len(work) // (8 * cfg.workers))))
    else:
        results = [_replicate(w) for w in work]

    truth = {"lam": cfg.true_params.lam, "alpha": cfg.true_params.alpha}
    acc: dict[tuple, dict] = {}
    for n in cfg.sample_sizes:
        for m in cfg.methods:
            acc[(m, n)] = dict(
                k=0, fail=0,
                sum_rel={"lam": 0.0, "alpha": 0.0},
                sum_sq={"lam": 0.0, "alpha": 0.0},
                cov={"lam": 0, "alpha": 0},
                cov_k=0,
            )
    for n, rec in results:
        for m, payload in rec.items():
            a = acc[(m, n)]
            if payload is None:
                a["fail"] += 1
                continue
            lam, alpha, cov_lam, cov_alpha = payload
            a["k"] += 1
            for name, val in (("lam", lam), ("alpha", alpha)):
                a["sum_rel"][name] += val / truth[name]
                a["sum_sq"][name] += (val - truth[name]) ** 2
            if cov_lam is not None:
                a["cov_k"] += 1
                a["cov"]["lam"] += bool(cov_lam)
                a["cov"]["alpha"] += bool(cov_alpha)

    rows = []
    for n in cfg.sample_sizes:
        for m in cfg.methods:
            a = acc[(m, n)]
            for pname in ("lam", "alpha"):
                k = a["k"]
                rows.append(
                    StudyRow(
                        method=m,
                        n=n,
                        parameter=pname,
                        mre=a["sum_rel"][pname] / k if k else math.nan,
                        mse=a["sum_sq"][pname] / k if k else math.nan,
                        coverage=a["cov"][pname] / a["cov_k"] if a["cov_k"] else None,
                        failures=a["fail"],
                    )
                )
    return StudyResult(config=cfg, rows=tuple(rows))


def rows_as_dicts(result: StudyResult) -> list[dict]:
    return [
        {
            "method": r.method,
            "n": r.n,
            "parameter": r.parameter,
            "mre": r.mre,
            "mse": r.mse,
            "coverage": r.coverage,
            "failures": r.failures,
        }
        for r in result.rows
    ]


def write_csv(result: StudyResult, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["method", "n", "parameter", "mre", "mse", "coverage", "failures"])
        for r in result.rows:
            w.writerow(
                [
                    r.method,
                    r.n,
                    r.parameter,
                    f"{r.mre:.12g}",
                    f"{r.mse:.12g}",
                    "" if r.coverage is None else f"{r.coverage:.12g}",
                    r.failures,
                ]
            )


def write_json(result: StudyResult, path, manifest: dict | None = None) -> None:
    doc = {"rows": rows_as_dicts(result)}
    if manifest is not None:
        doc["manifest"] = manifest
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
