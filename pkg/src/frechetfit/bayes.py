"""Objective-Bayes inference for the Frechet distribution.

Under the reference/Jeffreys prior proportional to ``1/(lam*alpha)`` the
posterior factorizes: the shape has an explicit (unnormalized) marginal,
and the scale given the shape is ``Gamma(n, sum(t**-alpha))``.  A
Metropolis-Hastings sampler with a Gamma transition kernel draws the shape
chain; the scale is summarized through its conditional quantiles at the
posterior median of the shape.  Point estimates are posterior medians:
they are invariant under monotone reparameterization and finite for
``n >= 2``, whereas the posterior mean of the scale is provably infinite
for some datasets (see :func:`posterior_mean_proper`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import gamma as gamma_dist

from .distribution import FrechetParams, Sample
from .errors import DomainError, UndefinedDiagnosticError

__all__ = [
    "McmcConfig",
    "PosteriorChain",
    "log_marginal_posterior",
    "conditional_lambda_quantile",
    "posterior_mean_proper",
    "posterior_mean_diagnostic",
    "geweke_z",
    "mh_sample",
    "posterior_summary",
]


@dataclass(frozen=True)
class McmcConfig:
    """Chain-length and kernel settings.

    Defaults follow the simulation protocol (5500 iterations, 500 burned,
    thin 5, unit kernel scale); the command-line single-dataset default is
    15000 iterations.  ``kernel_b`` controls the Gamma proposal: the
    candidate given state ``a`` is ``Gamma(shape=b*a, rate=b)``.
    """

    iterations: int = 5500
    burn_in: int = 500
    jump: int = 5
    kernel_b: float = 1.0
    seed: int = 2018
    geweke_level: float = 0.95

    def __post_init__(self):
        if not (1 <= self.burn_in < self.iterations):
            raise DomainError("need 1 <= burn_in < iterations")
        if self.jump < 1:
            raise DomainError("jump must be >= 1")
        if self.kernel_b <= 0:
            raise DomainError("kernel_b must be positive")
        if not (0.0 < self.geweke_level < 1.0):
            raise DomainError("geweke_level must be in (0,1)")


@dataclass(frozen=True)
class PosteriorChain:
    """Thinned post-burn-in shape draws plus scale and diagnostic summaries."""

    alpha_draws: np.ndarray
    lambda_median: float
    acceptance_rate: float
    geweke_z: float
    config: McmcConfig
    mean_proper: bool


def log_marginal_posterior(alpha: float, s: Sample) -> float:
    """Unnormalized log marginal posterior of the shape.

    ``(n-2) log a - a sum(log t) - n log(sum(t**-a))``, stable for any
    positive shape.  The additive constant is shared across shapes, so
    only differences are meaningful.
    """
    if alpha <= 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be positive, got {alpha}")
    n = s.n
    x = -alpha * s.log_values
    m = float(x.max())
    log_power_sum = m + math.log(float(np.exp(x - m).sum()))
    return (n - 2) * math.log(alpha) - alpha * s.sum_log - n * log_power_sum


def conditional_lambda_quantile(prob: float, alpha: float, s: Sample) -> float:
    """Quantile of the scale's conditional posterior ``Gamma(n, sum(t**-a))``."""
    if not (0.0 < prob < 1.0):
        raise DomainError(f"prob must be in (0,1), got {prob}")
    if alpha <= 0 or not math.isfinite(alpha):
        raise DomainError(f"alpha must be positive, got {alpha}")
    x = -alpha * s.log_values
    m = float(x.max())
    rate = math.exp(m) * float(np.exp(x - m).sum())
    return float(gamma_dist.ppf(prob, a=s.n, scale=1.0 / rate))


def posterior_mean_diagnostic(s: Sample) -> tuple[float, float]:
    """Product of observations over the sample minimum, and the minimum.

    The posterior mean of the scale is provably infinite whenever the
    first value is <= the second.
    """
    log_ratio = s.sum_log - s.n * math.log(s.min)
    return math.exp(log_ratio), s.min


def posterior_mean_proper(s: Sample) -> bool:
    """False when the scale's posterior mean is proven infinite.

    The check is sufficient, not necessary: True means "impropriety not
    proven", computed in log space as
    ``sum(log t) - (n+1) log(min t) > 0``.
    """
    return s.sum_log - (s.n + 1) * math.log(s.min) > 0.0


def geweke_z(chain, first: float = 0.1, last: float = 0.5, batches: int = 20) -> float:
    """Convergence z-score comparing early and late window means.

    The variance of each window mean is estimated by non-overlapping batch
    means (20 batches; windows shorter than 20 draws fall back to
    one-draw batches).  ``|z| < 1.96`` accepts convergence at the 95%
    level.
    """
    arr = np.asarray(chain, dtype=float).ravel()
    if arr.size < 100:
        raise DomainError(f"chain too short for the diagnostic: {arr.size} < 100")
    head = arr[: max(2, int(first * arr.size))]
    tail = arr[arr.size - max(2, int(last * arr.size)):]

    def batch_se2(window: np.ndarray) -> float:
        k = min(batches, window.size)
        size = window.size // k
        means = window[: k * size].reshape(k, size).mean(axis=1)
        return float(means.var(ddof=1)) / k

    v = batch_se2(head) + batch_se2(tail)
    if v <= 0.0:
        raise UndefinedDiagnosticError("zero-variance chain; diagnostic undefined")
    return (float(head.mean()) - float(tail.mean())) / math.sqrt(v)


def _initial_alpha(s: Sample) -> float:
    """L-moments-based starting shape, floored at 1."""
    n = s.n
    l1 = s.mean
    l2 = 2.0 / (n * (n - 1)) * float(np.sum(np.arange(n, dtype=float) * s.sorted_values)) - l1
    ratio = l2 / l1
    if ratio <= 0.0 or not math.isfinite(ratio):
        return 1.0
    return max(math.log(2.0) / math.log1p(ratio), 1.0)


def _log_gamma_pdf(x: float, shape: float, rate: float) -> float:
    if x <= 0 or shape <= 0:
        return -math.inf
    return shape * math.log(rate) + (shape - 1.0) * math.log(x) - rate * x - math.lgamma(shape)


def _mh_chain(log_target, alpha0: float, iterations: int, b: float, rng) -> tuple[np.ndarray, int]:
    """Gamma-kernel Metropolis-Hastings walk on a positive scalar.

    Returns the full path including the initial state, and the acceptance
    count.  Non-finite acceptance ratios are treated as rejections.
    """
    chain = np.empty(iterations + 1)
    cur = float(alpha0)
    lp_cur = log_target(cur)
    chain[0] = cur
    accepted = 0
    for i in range(iterations):
        prop = rng.gamma(b * cur, 1.0 / b)
        if prop > 0.0:
            lp_prop = log_target(prop)
            log_ratio = (
                lp_prop
                + _log_gamma_pdf(cur, b * prop, b)
                - _log_gamma_pdf(prop, b * cur, b)
                - lp_cur
            )
            # min(1, exp(log_ratio)); NaN ratios count as rejections
            if math.isnan(log_ratio):
                h = math.nan
            elif log_ratio >= 0:
                h = 1.0
            else:
                h = math.exp(log_ratio)
        else:
            h = math.nan
        u = rng.random()
        if not math.isnan(h) and u < h:
            cur = prop
            lp_cur = lp_prop
            accepted += 1
        chain[i + 1] = cur
    return chain, accepted


def mh_sample(s: Sample, cfg: McmcConfig = McmcConfig()) -> PosteriorChain:
    """Draw the shape's posterior chain and summarize the scale.

    The walk starts at the L-moments shape (floored at 1), proposes from
    ``Gamma(b*current, b)``, burns the first ``burn_in`` states and keeps
    every ``jump``-th state from there on.  The scale median comes from
    the conditional Gamma at the shape's posterior median.  The chain is
    reproducible given (data, config, seed).
    """
    rng = np.random.default_rng(cfg.seed)
    target = lambda a: log_marginal_posterior(a, s)
    path, accepted = _mh_chain(target, _initial_alpha(s), cfg.iterations, cfg.kernel_b, rng)
    # retain state indices burn_in, burn_in+jump, ... <= iterations,
    # counting the initial state as index 1
    thinned = path[cfg.burn_in - 1 : cfg.iterations : cfg.jump].copy()
    alpha_median = float(np.median(thinned))
    return PosteriorChain(
        alpha_draws=thinned,
        lambda_median=conditional_lambda_quantile(0.5, alpha_median, s),
        acceptance_rate=accepted / cfg.iterations,
        geweke_z=geweke_z(thinned) if thinned.size >= 100 else math.nan,
        config=cfg,
        mean_proper=posterior_mean_proper(s),
    )


def posterior_summary(
    chain: PosteriorChain, s: Sample
) -> tuple[FrechetParams, tuple[tuple[float, float], tuple[float, float]]]:
    """Posterior medians and equal-tailed 95% credible intervals.

    The shape uses the chain's 50%/2.5%/97.5% quantiles; the scale uses the
    conditional Gamma at the shape median.
    """
    draws = chain.alpha_draws
    if draws.size == 0:
        raise DomainError("empty chain")
    alpha_med = float(np.median(draws))
    alpha_lo, alpha_hi = (float(q) for q in np.quantile(draws, [0.025, 0.975]))
    lam_med = conditional_lambda_quantile(0.5, alpha_med, s)
    lam_lo = conditional_lambda_quantile(0.025, alpha_med, s)
    lam_hi = conditional_lambda_quantile(0.975, alpha_med, s)
    return FrechetParams(lam_med, alpha_med), ((lam_lo, lam_hi), (alpha_lo, alpha_hi))
