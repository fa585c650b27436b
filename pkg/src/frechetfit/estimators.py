"""Frequentist estimators for the Frechet distribution.

Nine methods are provided: maximum likelihood (MLE), method of moments
(MME), L-moments (LME), percentile matching (PCE), ordinary and weighted
least squares on the CDF (LSE/WLSE), maximum product of spacings (MPS),
and the Cramer-von Mises and Anderson-Darling minimum-distance estimators
(CME/ADE).  Asymptotic 95% confidence intervals from the expected
information matrix are attached to the MLE and MPS fits, which share the
same limiting normal distribution.

Two-dimensional searches run Nelder-Mead on ``(log lam, log alpha)`` so
positivity is automatic, seeded from the closed-form L-moments estimate
(with an MLE fallback), and are certified by the method's stationarity
equations before an estimate is reported as converged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize
from scipy.special import gammaln
from scipy.stats import norm

from .distribution import (
    FrechetParams,
    Sample,
    cdf_kernels,
    coefficient_of_variation,
    fisher_information,
    log_pdf,
)
from .errors import (
    BracketExpansionError,
    DegenerateSampleError,
    DomainError,
    InfeasibleEstimateError,
)

__all__ = [
    "Method",
    "SolverConfig",
    "SolverDiagnostics",
    "Estimate",
    "profile_score",
    "fit_mle",
    "fit_mme",
    "fit_lme",
    "fit_pce",
    "fit_min_distance",
    "fit_mps",
    "fit",
    "asymptotic_ci",
]


class Method(str, Enum):
    MLE = "mle"
    MME = "mme"
    LME = "lme"
    PCE = "pce"
    LSE = "lse"
    WLSE = "wlse"
    MPS = "mps"
    CME = "cme"
    ADE = "ade"


#: Plotting-position rules, mapping (ranks 1..n, n) -> probabilities.
PLOTTING_POSITIONS: dict[str, Callable[[np.ndarray, int], np.ndarray]] = {
    "weibull": lambda i, n: i / (n + 1.0),
    "hazen": lambda i, n: (i - 0.5) / n,
}


@dataclass(frozen=True)
class SolverConfig:
    """Knobs shared by the iterative estimators.

    ``alpha_bracket`` is the initial root bracket for the profile score,
    expanded by doubling/halving when needed.  ``tol`` is the relative
    tolerance of one-dimensional root solves; ``max_iter`` caps function
    evaluations per minimizer run; ``stationarity_tol`` is the relative
    residual below which the first-order conditions count as satisfied.
    ``plotting_position`` selects the rule for the probabilities assigned
    to order statistics ("weibull" is i/(n+1), the rule used throughout).
    """

    alpha_bracket: tuple[float, float] = (0.1, 10.0)
    tol: float = 1e-12
    max_iter: int = 2000
    plotting_position: str = "weibull"
    stationarity_tol: float = 1e-5

    def __post_init__(self):
        lo, hi = self.alpha_bracket
        if not (0 < lo < hi):
            raise DomainError(f"alpha_bracket must satisfy 0 < lo < hi, got {self.alpha_bracket}")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.max_iter < 10:
            raise DomainError("max_iter too small")
        if self.plotting_position not in PLOTTING_POSITIONS:
            raise DomainError(f"unknown plotting position {self.plotting_position!r}")

    def positions(self, n: int) -> np.ndarray:
        return PLOTTING_POSITIONS[self.plotting_position](np.arange(1, n + 1, dtype=float), n)


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class SolverDiagnostics:
    iterations: int
    objective: float
    stationarity: float
    converged: bool
    message: str = ""


@dataclass(frozen=True)
class Estimate:
    """Fitted parameters plus how they were obtained.

    ``ci95`` holds the asymptotic 95% intervals ``((lam_lo, lam_hi),
    (alpha_lo, alpha_hi))`` and is populated only for MLE and MPS.
    """

    method: Method
    params: FrechetParams
    ci95: tuple[tuple[float, float], tuple[float, float]] | None = None
    diagnostics: SolverDiagnostics = field(
        default=SolverDiagnostics(0, math.nan, math.nan, False)
    )


# ---------------------------------------------------------------------------
# Maximum likelihood
# ---------------------------------------------------------------------------


def _score_parts(alpha: float, s: Sample) -> tuple[float, float]:
    """Stable weighted means over ``w_i = t_i**-alpha``.

    Returns ``(r1, r2)`` where ``r1 = sum(w log t)/sum(w)`` and
    ``r2 = sum(w (log t)**2)/sum(w)``, computed with the max exponent
    factored out.
    """
    x = -alpha * s.log_values
    m = x.max()
    w = np.exp(x - m)
    sw = w.sum()
    r1 = float((w * s.log_values).sum() / sw)
    r2 = float((w * s.log_values**2).sum() / sw)
    return r1, r2


def profile_score(alpha: float, s: Sample) -> float:
    """Derivative of the profile log-likelihood in the shape parameter.

    ``G(a) = n/a - sum(log t) + n * sum(t**-a log t) / sum(t**-a)``;
    strictly decreasing on (0, inf) with ``G(0+) = +inf`` and
    ``G(inf) = n log(min t / geometric mean) < 0`` for any non-degenerate
    sample, so it has exactly one root.
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if s.is_degenerate():
        raise DegenerateSampleError("profile score undefined when all values are equal")
    r1, _ = _score_parts(alpha, s)
    return s.n / alpha - s.sum_log + s.n * r1


def _profile_score_derivative(alpha: float, s: Sample) -> float:
    r1, r2 = _score_parts(alpha, s)
    return -s.n / alpha**2 - s.n * (r2 - r1 * r1)


def _power_sum(alpha: float, s: Sample) -> float:
    """``sum(t_i**-alpha)`` without overflow."""
    x = -alpha * s.log_values
    m = x.max()
    return math.exp(m) * float(np.exp(x - m).sum())


def _solve_profile_root(s: Sample, cfg: SolverConfig) -> tuple[float, int]:
    lo, hi = cfg.alpha_bracket
    expansions = 0
    while profile_score(hi, s) >= 0:
        hi *= 2.0
        expansions += 1
        if expansions > 60:
            raise BracketExpansionError("no sign change above the alpha bracket")
    shrinks = 0
    while profile_score(lo, s) <= 0:
        lo /= 2.0
        shrinks += 1
        if shrinks > 60:
            raise BracketExpansionError("no sign change below the alpha bracket")
    expansions += shrinks
    root, res = brentq(
        lambda a: profile_score(a, s), lo, hi, xtol=1e-13, rtol=max(cfg.tol, 8.9e-16),
        maxiter=200, full_output=True,
    )
    evals = res.function_calls + expansions
    # Newton polish; G' is available in closed form and G is monotone
    for _ in range(3):
        g = profile_score(root, s)
        dg = _profile_score_derivative(root, s)
        step = g / dg
        if not math.isfinite(step) or abs(step) > 0.5 * root:
            break
        root -= step
        evals += 1
    return root, evals


def _mle_stationarity(p: FrechetParams, s: Sample) -> float:
    """Max relative residual of the two likelihood equations."""
    S = _power_sum(p.alpha, s)
    r1, _ = _score_parts(p.alpha, s)
    eq1 = s.n / p.lam - S
    eq2 = s.n / p.alpha - s.sum_log + p.lam * S * r1
    scale1 = s.n / p.lam + S
    scale2 = s.n / p.alpha + abs(s.sum_log) + abs(p.lam * S * r1) + 1e-300
    return max(abs(eq1) / scale1, abs(eq2) / scale2)


def fit_mle(s: Sample, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """Maximum likelihood fit; unique for any sample that is not all ties.

    The shape is the single root of :func:`profile_score` (bracketed
    bisection plus a Newton polish); the scale follows as
    ``n / sum(t**-alpha)``.
    """
    alpha, evals = _solve_profile_root(s, cfg)
    lam = s.n / _power_sum(alpha, s)
    params = FrechetParams(lam, alpha)
    resid = _mle_stationarity(params, s)
    diag = SolverDiagnostics(
        iterations=evals,
        objective=float(np.sum(log_pdf(s.values, params))),
        stationarity=resid,
        converged=resid < cfg.stationarity_tol,
    )
    est = Estimate(Method.MLE, params, None, diag)
    return replace(est, ci95=asymptotic_ci(est, s, 0.95))


# ---------------------------------------------------------------------------
# Moment and L-moment estimators (closed-form / one-dimensional)
# ---------------------------------------------------------------------------

_MME_ALPHA_RANGE = (2.0 + 1e-6, 1e3)


def fit_mme(s: Sample, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """Method of moments via the coefficient of variation.

    Solves ``CV(alpha) = s / tbar`` (sample SD over mean, SD with divisor
    ``n - 1``) for ``alpha > 2``, then ``lam = (tbar / Gamma(1-1/alpha))**alpha``.
    Samples whose CV falls outside what any ``alpha > 2`` can produce are
    reported as infeasible rather than forced.
    """
    tbar = s.mean
    sd = float(s.values.std(ddof=1))
    if sd == 0.0:
        raise DegenerateSampleError("sample CV is zero; all values equal")
    target = sd / tbar
    lo, hi = _MME_ALPHA_RANGE
    f = lambda a: coefficient_of_variation(a) - target
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        raise InfeasibleEstimateError(
            "mme", f"sample CV {target:.6g} not attained by any alpha in ({lo:.6g}, {hi:.6g})"
        )
    alpha, res = brentq(f, lo, hi, xtol=1e-13, rtol=max(cfg.tol, 8.9e-16), maxiter=200,
                        full_output=True)
    lam = math.exp(alpha * (math.log(tbar) - gammaln(1.0 - 1.0 / alpha)))
    resid = abs(f(alpha)) / (target + 1e-300)
    diag = SolverDiagnostics(
        iterations=res.function_calls,
        objective=resid,
        stationarity=resid,
        converged=resid < cfg.stationarity_tol,
    )
    return Estimate(Method.MME, FrechetParams(lam, alpha), None, diag)


def _lme_alpha(s: Sample) -> float:
    """Closed-form L-moments shape: ``log 2 / log(l2/l1 + 1)`` rearranged."""
    weighted = float(np.sum(np.arange(s.n, dtype=float) * s.sorted_values))
    denom = math.log(2.0) + math.log(weighted) - math.log(s.n * (s.n - 1) * s.mean)
    if denom <= 0:
        raise DegenerateSampleError("sample L-scale is not positive")
    return math.log(2.0) / denom


def fit_lme(s: Sample) -> Estimate:
    """L-moments fit; the only method with closed forms for both parameters.

    Requires the implied shape to exceed 1, otherwise the population mean
    (and hence the scale equation) does not exist.
    """
    alpha = _lme_alpha(s)
    if alpha <= 1.0:
        raise InfeasibleEstimateError(
            "lme", f"implied alpha {alpha:.6g} <= 1; scale equation undefined"
        )
    lam = math.exp(alpha * (math.log(s.mean) - gammaln(1.0 - 1.0 / alpha)))
    diag = SolverDiagnostics(iterations=0, objective=0.0, stationarity=0.0, converged=True)
    return Estimate(Method.LME, FrechetParams(lam, alpha), None, diag)


# ---------------------------------------------------------------------------
# Two-dimensional minimum-distance style estimators
# ---------------------------------------------------------------------------

_LOG_PARAM_LIMIT = 45.0  # |log lam|, |log alpha| beyond this is treated as off-domain

_F_FLOOR = 1e-300
_F_CEIL = 1.0 - 1e-16


def _sorted_cdf(z: np.ndarray, log_sorted: np.ndarray) -> np.ndarray:
    lam, alpha = math.exp(z[0]), math.exp(z[1])
    with np.errstate(over="ignore", under="ignore"):
        return np.exp(-lam * np.exp(-alpha * log_sorted))


def _objective_pce(s: Sample, cfg: SolverConfig):
    p = cfg.positions(s.n)
    logw = np.log(-np.log(p))  # log log(1/p_i)
    st = s.sorted_values

    def obj(z):
        # quantiles Q(p_i) on the log scale to keep extreme shapes finite
        q = np.exp(-(logw - z[0]) / math.exp(z[1]))
        r = st - q
        return float(r @ r)

    return obj


def _objective_lse(s: Sample, cfg: SolverConfig, weighted: bool):
    p = cfg.positions(s.n)
    if weighted:
        i = np.arange(1, s.n + 1, dtype=float)
        w = (s.n + 1.0) ** 2 * (s.n + 2.0) / (i * (s.n - i + 1.0))
    else:
        w = None
    ls = s.log_sorted

    def obj(z):
        r = _sorted_cdf(z, ls) - p
        return float(r @ r) if w is None else float((w * r) @ r)

    return obj


def _objective_cme(s: Sample, cfg: SolverConfig):
    p = (2.0 * np.arange(1, s.n + 1, dtype=float) - 1.0) / (2.0 * s.n)
    ls = s.log_sorted
    c = 1.0 / (12.0 * s.n)

    def obj(z):
        r = _sorted_cdf(z, ls) - p
        return c + float(r @ r)

    return obj


def _objective_ade(s: Sample, cfg: SolverConfig):
    coef = 2.0 * np.arange(1, s.n + 1, dtype=float) - 1.0
    ls = s.log_sorted
    n = s.n

    def obj(z):
        lam, alpha = math.exp(z[0]), math.exp(z[1])
        with np.errstate(over="ignore", under="ignore"):
            u = np.exp(-alpha * ls)
            log_f = -lam * u  # log F(t_(i)) = -lam t**-alpha, exact
            surv_rev = -np.expm1(-lam * u[::-1])  # 1 - F(t_(n+1-i))
        log_surv = np.log(np.clip(surv_rev, _F_FLOOR, None))
        return -n - float(np.dot(coef, log_f + log_surv)) / n

    return obj


def _objective_mps(s: Sample, cfg: SolverConfig):
    ls = s.log_sorted
    st = s.sorted_values
    # spacing index i (1-based, i = 2..n) has t_(i) == t_(i-1): use the
    # log-density of the tied point instead of the zero spacing
    tied = np.flatnonzero(np.diff(st) == 0.0) + 1

    def neg_h(z):
        lam, alpha = math.exp(z[0]), math.exp(z[1])
        f = _sorted_cdf(z, ls)
        d = np.diff(np.concatenate(([0.0], f, [1.0])))
        terms = np.log(np.clip(d, _F_FLOOR, None))
        if tied.size:
            lg = math.log(lam) + math.log(alpha) - (alpha + 1.0) * ls[tied] - lam * np.exp(
                -alpha * ls[tied]
            )
            terms[tied] = lg
        return -float(terms.mean())

    return neg_h


def _guarded(objective):
    def wrapped(z):
        if np.max(np.abs(z)) > _LOG_PARAM_LIMIT:
            return math.inf
        with np.errstate(all="ignore"):
            v = objective(z)
        return v if math.isfinite(v) else math.inf

    return wrapped


def _relative_sum_residual(terms_by_equation: list[np.ndarray]) -> float:
    worst = 0.0
    for terms in terms_by_equation:
        denom = float(np.abs(terms).sum()) + 1e-300
        worst = max(worst, abs(float(terms.sum())) / denom)
    return worst


def _stationarity_weighted_cdf(p: FrechetParams, s: Sample, positions, weights=None):
    """Residual of ``sum w (F - p) k_j = 0`` for the two CDF kernels.

    Normalized by the weighted kernel mass rather than the summand
    magnitudes, which collapse to rounding noise at zero-residual optima.
    """
    k1, k2 = cdf_kernels(s.sorted_values, p)
    f = np.exp(-p.lam * np.exp(-p.alpha * s.log_sorted))
    r = f - positions
    w = np.ones_like(r) if weights is None else weights
    worst = 0.0
    for k in (k1, k2):
        denom = float(np.abs(w * k).sum()) + 1e-300
        worst = max(worst, abs(float((w * r * k).sum())) / denom)
    return worst


def _stationarity_ade(p: FrechetParams, s: Sample) -> float:
    coef = 2.0 * np.arange(1, s.n + 1, dtype=float) - 1.0
    k1, k2 = cdf_kernels(s.sorted_values, p)
    f = np.clip(np.exp(-p.lam * np.exp(-p.alpha * s.log_sorted)), _F_FLOOR, _F_CEIL)
    surv = np.clip(1.0 - f[::-1], _F_FLOOR, None)
    eqs = []
    for k in (k1, k2):
        eqs.append(np.concatenate([coef * k / f, -coef * k[::-1] / surv]))
    return _relative_sum_residual(eqs)


def _stationarity_mps(p: FrechetParams, s: Sample, neg_h) -> float:
    if np.any(np.diff(s.sorted_values) == 0.0):
        return _fd_gradient_residual(neg_h, p)
    k1, k2 = cdf_kernels(s.sorted_values, p)
    f = np.exp(-p.lam * np.exp(-p.alpha * s.log_sorted))
    d = np.clip(np.diff(np.concatenate(([0.0], f, [1.0]))), _F_FLOOR, None)
    eqs = []
    for k in (k1, k2):
        kb = np.concatenate(([0.0], k, [0.0]))  # kernels vanish at t=0+ and t=inf
        eqs.append(np.diff(kb) / d)
    return _relative_sum_residual(eqs)


def _fd_gradient_residual(objective, p: FrechetParams, h: float = 1e-5) -> float:
    """Estimated distance (in log-parameter units) to the nearest stationary
    point: central-difference gradient over central-difference curvature."""
    z = np.log([p.lam, p.alpha])
    grad = np.empty(2)
    curv = 0.0
    f0 = objective(z)
    for j in range(2):
        zp, zm = z.copy(), z.copy()
        zp[j] += h
        zm[j] -= h
        fp, fm = objective(zp), objective(zm)
        grad[j] = (fp - fm) / (2 * h)
        curv = max(curv, abs(fp - 2 * f0 + fm) / h**2)
    return float(np.max(np.abs(grad))) / (curv + 1e-300)


def _start_params(s: Sample, cfg: SolverConfig) -> FrechetParams:
    try:
        return fit_lme(s).params
    except (InfeasibleEstimateError, DegenerateSampleError):
        return fit_mle(s, cfg).params


def _minimize_2d(
    objective,
    start: FrechetParams,
    cfg: SolverConfig,
    stationarity: Callable[[FrechetParams], float],
    fallback_start: Callable[[], FrechetParams] | None = None,
):
    obj = _guarded(objective)
    z0 = np.log([start.lam, start.alpha])

    res = minimize(obj, z0, method="Nelder-Mead",
                   options=dict(xatol=1e-9, fatol=1e-12, maxfev=cfg.max_iter))
    nfev = res.nfev
    best = FrechetParams(*np.exp(res.x))
    resid = stationarity(best)
    if resid >= cfg.stationarity_tol:
        # fresh-simplex restart, then a gradient polish, then one restart
        # from the fallback start; keep whatever certifies best
        res2 = minimize(obj, res.x, method="Nelder-Mead",
                        options=dict(xatol=1e-11, fatol=1e-14, maxfev=cfg.max_iter // 2))
        nfev += res2.nfev
        cand = FrechetParams(*np.exp(res2.x))
        if res2.fun <= res.fun:
            best, res, resid = cand, res2, stationarity(cand)
    if resid >= cfg.stationarity_tol:
        pol = minimize(obj, res.x, method="BFGS", options=dict(gtol=1e-12, maxiter=200))
        nfev += pol.nfev
        cand_resid = stationarity(FrechetParams(*np.exp(pol.x)))
        if obj(pol.x) <= res.fun and cand_resid < resid:
            best, res, resid = FrechetParams(*np.exp(pol.x)), pol, cand_resid
    if resid >= cfg.stationarity_tol and fallback_start is not None:
        try:
            alt0 = fallback_start()
        except Exception:
            alt0 = None
        if alt0 is not None:
            alt = minimize(obj, np.log([alt0.lam, alt0.alpha]), method="Nelder-Mead",
                           options=dict(xatol=1e-11, fatol=1e-14, maxfev=cfg.max_iter))
            nfev += alt.nfev
            if alt.fun <= res.fun:
                best, res = FrechetParams(*np.exp(alt.x)), alt
                resid = stationarity(best)
    converged = bool(math.isfinite(res.fun) and resid < cfg.stationarity_tol)
    diag = SolverDiagnostics(
        iterations=int(nfev),
        objective=float(res.fun),
        stationarity=float(resid),
        converged=converged,
    )
    return best, diag


def fit_pce(s: Sample, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """Percentile fit: least squares between order statistics and the
    quantiles at plotting positions ``p_i``."""
    obj = _objective_pce(s, cfg)
    params, diag = _minimize_2d(
        obj,
        _start_params(s, cfg),
        cfg,
        stationarity=lambda p: _fd_gradient_residual(_guarded(obj), p),
        fallback_start=lambda: fit_mle(s, cfg).params,
    )
    return Estimate(Method.PCE, params, None, diag)


def fit_min_distance(s: Sample, kind: Method | str, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """LSE, WLSE, CME or ADE fit by minimizing the kind-specific distance
    between the fitted CDF and the empirical plotting positions."""
    kind = Method(kind)
    if kind is Method.LSE:
        obj = _objective_lse(s, cfg, weighted=False)
        stat = lambda p: _stationarity_weighted_cdf(p, s, cfg.positions(s.n))
    elif kind is Method.WLSE:
        obj = _objective_lse(s, cfg, weighted=True)
        i = np.arange(1, s.n + 1, dtype=float)
        w = (s.n + 1.0) ** 2 * (s.n + 2.0) / (i * (s.n - i + 1.0))
        stat = lambda p: _stationarity_weighted_cdf(p, s, cfg.positions(s.n), w)
    elif kind is Method.CME:
        obj = _objective_cme(s, cfg)
        pos = (2.0 * np.arange(1, s.n + 1, dtype=float) - 1.0) / (2.0 * s.n)
        stat = lambda p: _stationarity_weighted_cdf(p, s, pos)
    elif kind is Method.ADE:
        obj = _objective_ade(s, cfg)
        stat = lambda p: _stationarity_ade(p, s)
    else:
        raise DomainError(f"{kind} is not a minimum-distance method")
    params, diag = _minimize_2d(
        obj, _start_params(s, cfg), cfg, stat, fallback_start=lambda: fit_mle(s, cfg).params
    )
    return Estimate(kind, params, None, diag)


def fit_mps(s: Sample, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """Maximum product of spacings.

    Maximizes the mean log CDF increment between consecutive order
    statistics (boundary spacings against 0 and 1 included).  Tied
    consecutive observations contribute their log-density instead of the
    zero spacing.  Shares the MLE's limiting distribution, so the same
    asymptotic intervals are attached.
    """
    neg_h = _objective_mps(s, cfg)
    params, diag = _minimize_2d(
        neg_h,
        _start_params(s, cfg),
        cfg,
        stationarity=lambda p: _stationarity_mps(p, s, _guarded(neg_h)),
        fallback_start=lambda: fit_mle(s, cfg).params,
    )
    est = Estimate(Method.MPS, params, None, diag)
    return replace(est, ci95=asymptotic_ci(est, s, 0.95))


_FITTERS = {
    Method.MLE: fit_mle,
    Method.MME: fit_mme,
    Method.LME: lambda s, cfg: fit_lme(s),
    Method.PCE: fit_pce,
    Method.LSE: lambda s, cfg: fit_min_distance(s, Method.LSE, cfg),
    Method.WLSE: lambda s, cfg: fit_min_distance(s, Method.WLSE, cfg),
    Method.MPS: fit_mps,
    Method.CME: lambda s, cfg: fit_min_distance(s, Method.CME, cfg),
    Method.ADE: lambda s, cfg: fit_min_distance(s, Method.ADE, cfg),
}


def fit(s: Sample, method: Method | str, cfg: SolverConfig = DEFAULT_CONFIG) -> Estimate:
    """Dispatch to the requested estimator."""
    return _FITTERS[Method(method)](s, cfg)


def asymptotic_ci(
    e: Estimate, s: Sample, level: float = 0.95
) -> tuple[tuple[float, float], tuple[float, float]]:
    """Normal-theory intervals from the inverse information at the estimate.

    Valid for MLE and MPS, which share the same limiting distribution.
    Lower endpoints are truncated at zero.
    """
    if e.method not in (Method.MLE, Method.MPS):
        raise DomainError(f"asymptotic intervals are defined for MLE and MPS, not {e.method}")
    if not (0.0 < level < 1.0):
        raise DomainError(f"level must be in (0,1), got {level}")
    info = fisher_information(e.params, s.n)
    det = info[0, 0] * info[1, 1] - info[0, 1] ** 2
    if det <= 0 or not math.isfinite(det):
        raise DomainError("information matrix is singular")
    var_lam = info[1, 1] / det
    var_alpha = info[0, 0] / det
    z = float(norm.ppf(0.5 * (1.0 + level)))
    lam, alpha = e.params.lam, e.params.alpha
    return (
        (max(0.0, lam - z * math.sqrt(var_lam)), lam + z * math.sqrt(var_lam)),
        (max(0.0, alpha - z * math.sqrt(var_alpha)), alpha + z * math.sqrt(var_alpha)),
    )
