"""Model comparison against five competitor distributions.

Each candidate is fit by maximum likelihood (Nelder-Mead on unconstrained
reparameterizations; the lognormal has a closed form) and ranked by AIC,
BIC and AICc.  Survival-curve data for overlay plots is emitted on a
log-spaced grid together with the empirical step function.

Candidates: Frechet, Weibull ``(k/s)(t/s)**(k-1) exp(-(t/s)**k)``, Gamma
(shape-rate), Lognormal, Gumbel in its maximum form
``exp(-exp(-(t-mu)/sigma))``, and the generalized exponential with CDF
``(1 - exp(-rate*t))**shape``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize
from scipy.special import gammainc, gammaln

from .distribution import Sample, cdf as frechet_cdf, FrechetParams
from .errors import DomainError
from .estimators import DEFAULT_CONFIG, fit_mle

__all__ = [
    "MODELS",
    "ModelFit",
    "ComparisonReport",
    "SurvivalOverlay",
    "fit_competitor",
    "information_criteria",
    "compare_models",
    "survival_overlay",
    "format_report",
]

MODELS = ("frechet", "weibull", "gamma", "lognormal", "gumbel", "ge")


@dataclass(frozen=True)
class ModelFit:
    name: str
    params: dict[str, float]
    loglik: float
    converged: bool


class Criteria(NamedTuple):
    aic: float
    bic: float
    aicc: float


@dataclass(frozen=True)
class ModelRow:
    fit: ModelFit
    k: int
    criteria: Criteria


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    rows: dict[str, ModelRow]
    ranking: dict[str, tuple[str, ...]]  # criterion -> model names, best first

    def best(self, criterion: str = "aic") -> str:
        return self.ranking[criterion][0]


def information_criteria(loglik_max: float, k: int, n: int) -> Criteria:
    """AIC, BIC and small-sample-corrected AIC from a maximized log-likelihood."""
    if n <= k + 1:
        raise DomainError(f"AICc undefined for n={n} <= k+1={k + 1}")
    aic = -2.0 * loglik_max + 2.0 * k
    bic = -2.0 * loglik_max + k * math.log(n)
    aicc = aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)
    return Criteria(aic, bic, aicc)


# ---------------------------------------------------------------------------
# Candidate log-likelihoods (z holds the unconstrained parameters)
# ---------------------------------------------------------------------------


def _nll_weibull(z, t, lt, n):
    k, s = math.exp(z[0]), math.exp(z[1])
    with np.errstate(over="ignore"):
        return -(
            n * (math.log(k) - math.log(s))
            + (k - 1.0) * float((lt - math.log(s)).sum())
            - float(np.exp(k * (lt - math.log(s))).sum())
        )


def _nll_gamma(z, t, lt, n):
    a, r = math.exp(z[0]), math.exp(z[1])
    return -(n * (a * math.log(r) - gammaln(a)) + (a - 1.0) * float(lt.sum()) - r * float(t.sum()))


def _nll_gumbel(z, t, lt, n):
    mu, s = z[0], math.exp(z[1])
    u = (t - mu) / s
    with np.errstate(over="ignore"):
        return -(-n * math.log(s) - float(u.sum()) - float(np.exp(-u).sum()))


def _nll_ge(z, t, lt, n):
    a, r = math.exp(z[0]), math.exp(z[1])
    with np.errstate(over="ignore", under="ignore"):
        g = -np.expm1(-r * t)  # 1 - exp(-rate t)
    g = np.clip(g, 1e-300, None)
    return -(n * (math.log(a) + math.log(r)) + (a - 1.0) * float(np.log(g).sum()) - r * float(t.sum()))


def _maximize(nll, z0, t, lt, n):
    f = lambda z: nll(z, t, lt, n)
    r1 = minimize(f, z0, method="Nelder-Mead",
                  options=dict(xatol=1e-10, fatol=1e-12, maxfev=4000))
    r2 = minimize(f, r1.x, method="Nelder-Mead",
                  options=dict(xatol=1e-11, fatol=1e-13, maxfev=2000))
    grad_ok = _fd_grad_norm(f, r2.x) < 1e-4 * n
    return r2.x, -r2.fun, bool(r2.fun <= r1.fun and np.isfinite(r2.fun) and grad_ok)


def _fd_grad_norm(f, z, h: float = 1e-6) -> float:
    g = 0.0
    for j in range(len(z)):
        zp, zm = z.copy(), z.copy()
        zp[j] += h
        zm[j] -= h
        g = max(g, abs(f(zp) - f(zm)) / (2 * h))
    return g


def fit_competitor(name: str, s: Sample) -> ModelFit:
    """Maximum-likelihood fit of one candidate; starts from moment-style guesses."""
    t, lt, n = s.values, s.log_values, s.n
    mean, sd = s.mean, float(t.std(ddof=1))
    if name == "frechet":
        est = fit_mle(s, DEFAULT_CONFIG)
        ll = n * (math.log(est.params.lam) + math.log(est.params.alpha))
        ll -= (est.params.alpha + 1.0) * s.sum_log
        ll -= est.params.lam * float(np.exp(-est.params.alpha * lt).sum())
        return ModelFit(name, {"lam": est.params.lam, "alpha": est.params.alpha}, ll,
                        est.diagnostics.converged)
    if name == "lognormal":
        mu = float(lt.mean())
        s2 = float(lt.var())  # MLE variance, divisor n
        ll = -0.5 * n * math.log(2.0 * math.pi * s2) - float(lt.sum()) - 0.5 * n
        return ModelFit(name, {"mu": mu, "sigma": math.sqrt(s2)}, ll, True)
    if name == "weibull":
        z, ll, ok = _maximize(_nll_weibull, np.log([1.2, mean]), t, lt, n)
        return ModelFit(name, {"shape": math.exp(z[0]), "scale": math.exp(z[1])}, ll, ok)
    if name == "gamma":
        v = sd * sd
        z, ll, ok = _maximize(_nll_gamma, np.log([mean * mean / v, mean / v]), t, lt, n)
        return ModelFit(name, {"shape": math.exp(z[0]), "rate": math.exp(z[1])}, ll, ok)
    if name == "gumbel":
        sg = sd * math.sqrt(6.0) / math.pi
        z, ll, ok = _maximize(_nll_gumbel, np.array([mean - 0.5772 * sg, math.log(sg)]), t, lt, n)
        return ModelFit(name, {"mu": z[0], "sigma": math.exp(z[1])}, ll, ok)
    if name == "ge":
        z, ll, ok = _maximize(_nll_ge, np.log([1.0, 1.0 / mean]), t, lt, n)
        return ModelFit(name, {"shape": math.exp(z[0]), "rate": math.exp(z[1])}, ll, ok)
    raise DomainError(f"unknown model {name!r}")


def compare_models(s: Sample, names: tuple[str, ...] = MODELS) -> ComparisonReport:
    rows = {}
    for name in names:
        mf = fit_competitor(name, s)
        rows[name] = ModelRow(fit=mf, k=2, criteria=information_criteria(mf.loglik, 2, s.n))
    ranking = {
        crit: tuple(sorted(rows, key=lambda m: getattr(rows[m].criteria, crit)))
        for crit in ("aic", "bic", "aicc")
    }
    return ComparisonReport(n=s.n, rows=rows, ranking=ranking)


def model_cdf(name: str, params: dict[str, float], t: np.ndarray) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    if name == "frechet":
        return np.asarray(frechet_cdf(t, FrechetParams(params["lam"], params["alpha"])))
    if name == "weibull":
        return -np.expm1(-((t / params["scale"]) ** params["shape"]))
    if name == "gamma":
        return gammainc(params["shape"], params["rate"] * t)
    if name == "lognormal":
        from scipy.stats import norm

        return norm.cdf((np.log(t) - params["mu"]) / params["sigma"])
    if name == "gumbel":
        return np.exp(-np.exp(-(t - params["mu"]) / params["sigma"]))
    if name == "ge":
        return (-np.expm1(-params["rate"] * t)) ** params["shape"]
    raise DomainError(f"unknown model {name!r}")


@dataclass(frozen=True)
class SurvivalOverlay:
    """Empirical and fitted survival curves for overlay plotting.

    ``step_t``/``step_survival`` carry the empirical step ``1 - i/n`` at the
    order statistics; ``grid`` is log-spaced over ``[min/2, 2*max]`` and
    ``fitted`` maps model name to survival on the grid.  ``empirical`` is
    the step function evaluated on the grid.
    """

    grid: np.ndarray
    empirical: np.ndarray
    step_t: np.ndarray
    step_survival: np.ndarray
    fitted: dict[str, np.ndarray]


def survival_overlay(s: Sample, fits: dict[str, ModelFit], grid_size: int = 200) -> SurvivalOverlay:
    if not fits:
        raise DomainError("no fitted models supplied")
    if grid_size < 2:
        raise DomainError("grid_size must be >= 2")
    grid = np.exp(np.linspace(math.log(s.min / 2.0), math.log(2.0 * s.max), grid_size))
    counts = np.searchsorted(s.sorted_values, grid, side="right")
    empirical = 1.0 - counts / s.n
    step_survival = 1.0 - np.arange(1, s.n + 1) / s.n
    fitted = {name: 1.0 - model_cdf(name, mf.params, grid) for name, mf in fits.items()}
    return SurvivalOverlay(
        grid=grid,
        empirical=empirical,
        step_t=s.sorted_values.copy(),
        step_survival=step_survival,
        fitted=fitted,
    )


def format_report(report: ComparisonReport, label: str = "") -> str:
    """Aligned text table: one row per criterion, one column per model."""
    names = list(report.rows)
    head = f"{label or 'criterion':<12}" + "".join(f"{n:>12}" for n in names)
    lines = [head]
    for crit in ("bic", "aic", "aicc"):
        vals = [getattr(report.rows[n].criteria, crit) for n in names]
        best = min(vals)
        cells = "".join(
            f"{v:>11.2f}{'*' if v == best else ' '}" for v in vals
        )
        lines.append(f"{crit.upper():<12}" + cells)
    lines.append("(* = criterion minimum)")
    return "\n".join(lines)
