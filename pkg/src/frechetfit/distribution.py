"""Core functions of the two-parameter Frechet (inverse Weibull) distribution.

The distribution has CDF ``F(t) = exp(-lam * t**(-alpha))`` for ``t > 0``,
with ``lam > 0`` (scale-like) and ``alpha > 0`` (shape).  All density and
tail arithmetic is done in log space; ``t**(-alpha)`` is always evaluated
as ``exp(-alpha * log(t))`` so that extreme observations do not lose
precision or overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, InfiniteMomentError

# Euler-Mascheroni constant, full double precision.
EULER_GAMMA = 0.57721566490153286

__all__ = [
    "EULER_GAMMA",
    "FrechetParams",
    "Sample",
    "pdf",
    "log_pdf",
    "cdf",
    "quantile",
    "raw_moment",
    "mean_variance",
    "coefficient_of_variation",
    "population_lmoments",
    "fisher_information",
    "cdf_kernels",
    "rvs",
]


@dataclass(frozen=True)
class FrechetParams:
    """Parameter pair: ``lam`` (scale, units of data**alpha) and ``alpha``
    (shape, dimensionless).  Both must be positive and finite."""

    lam: float
    alpha: float

    def __post_init__(self):
        lam = float(self.lam)
        alpha = float(self.alpha)
        if not (math.isfinite(lam) and lam > 0):
            raise DomainError(f"lam must be positive and finite, got {self.lam!r}")
        if not (math.isfinite(alpha) and alpha > 0):
            raise DomainError(f"alpha must be positive and finite, got {self.alpha!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "alpha", alpha)

    def as_tuple(self) -> tuple[float, float]:
        return (self.lam, self.alpha)


class Sample:
    """Validated positive observations with cached sorted order and logs.

    The arrays are frozen after construction, so a sample can be shared
    freely between concurrent estimator calls.
    """

    __slots__ = ("values", "sorted_values", "log_values", "log_sorted", "n", "sum_log")

    def __init__(self, values: Sequence[float] | np.ndarray):
        arr = np.array(values, dtype=float).ravel()
        if arr.size < 2:
            raise DomainError(f"need at least 2 observations, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("observations must be finite")
        if np.any(arr <= 0):
            raise DomainError("observations must be strictly positive")
        self.values = arr
        self.sorted_values = np.sort(arr)
        self.log_values = np.log(arr)
        self.log_sorted = np.log(self.sorted_values)
        self.n = int(arr.size)
        self.sum_log = float(self.log_values.sum())
        for a in (self.values, self.sorted_values, self.log_values, self.log_sorted):
            a.flags.writeable = False

    @property
    def min(self) -> float:
        return float(self.sorted_values[0])

    @property
    def max(self) -> float:
        return float(self.sorted_values[-1])

    @property
    def mean(self) -> float:
        return float(self.values.mean())

    def is_degenerate(self) -> bool:
        """True when all observations are equal."""
        return self.sorted_values[0] == self.sorted_values[-1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Sample(n={self.n}, min={self.min:.6g}, max={self.max:.6g})"


def _check_t(t) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0):
        raise DomainError("t must be positive and finite")
    return arr


def _maybe_scalar(x: np.ndarray, like) -> np.ndarray | float:
    return float(x) if np.isscalar(like) or np.ndim(like) == 0 else x


def log_pdf(t, p: FrechetParams):
    """Log-density ``log(lam) + log(alpha) - (alpha+1) log t - lam t**-alpha``."""
    arr = _check_t(t)
    logt = np.log(arr)
    with np.errstate(over="ignore"):
        u = np.exp(-p.alpha * logt)
        out = math.log(p.lam) + math.log(p.alpha) - (p.alpha + 1.0) * logt - p.lam * u
    return _maybe_scalar(out, t)


def pdf(t, p: FrechetParams):
    """Density of the Frechet distribution; 0 is approached as ``t -> 0+``."""
    out = np.exp(log_pdf(t, p))
    return _maybe_scalar(np.asarray(out), t)


def cdf(t, p: FrechetParams):
    """``exp(-lam * t**(-alpha))``, strictly increasing in ``t``."""
    arr = _check_t(t)
    with np.errstate(over="ignore"):
        out = np.exp(-p.lam * np.exp(-p.alpha * np.log(arr)))
    return _maybe_scalar(out, t)


def quantile(prob, p: FrechetParams, clamp: bool = False):
    """Inverse CDF: ``((1/lam) * log(1/prob)) ** (-1/alpha)``.

    ``prob`` outside the open interval (0, 1) raises ``DomainError`` unless
    ``clamp=True``, which pushes it to the nearest representable interior
    point first.
    """
    arr = np.asarray(prob, dtype=float)
    if clamp:
        arr = np.clip(arr, 5e-324, 1.0 - 1e-16)
    if np.any(arr <= 0) or np.any(arr >= 1) or not np.all(np.isfinite(arr)):
        raise DomainError("prob must lie strictly inside (0, 1)")
    w = -np.log(arr)  # log(1/prob)
    out = np.exp(-(np.log(w) - math.log(p.lam)) / p.alpha)
    return _maybe_scalar(out, prob)


def raw_moment(r: int, p: FrechetParams) -> float:
    """``E[T**r] = lam**(r/alpha) * Gamma(1 - r/alpha)``, finite iff ``alpha > r``."""
    if not (isinstance(r, (int, np.integer)) and r >= 1):
        raise DomainError(f"moment order must be a positive integer, got {r!r}")
    if p.alpha <= r:
        raise InfiniteMomentError(
            f"moment of order {r} is infinite for alpha={p.alpha} <= {r}"
        )
    return math.exp((r / p.alpha) * math.log(p.lam) + gammaln(1.0 - r / p.alpha))


def mean_variance(p: FrechetParams) -> tuple[float, float]:
    """Mean and variance; both finite only for ``alpha > 2``."""
    if p.alpha <= 2:
        detail = "mean and variance" if p.alpha <= 1 else "variance"
        raise InfiniteMomentError(f"{detail} infinite for alpha={p.alpha} <= 2")
    mean = raw_moment(1, p)
    m2 = raw_moment(2, p)
    return mean, m2 - mean * mean


def coefficient_of_variation(alpha: float) -> float:
    """Population CV ``sqrt(Gamma(1-2/a)/Gamma(1-1/a)**2 - 1)``; free of ``lam``."""
    if alpha <= 2:
        raise InfiniteMomentError(f"CV undefined for alpha={alpha} <= 2")
    ratio = math.exp(gammaln(1.0 - 2.0 / alpha) - 2.0 * gammaln(1.0 - 1.0 / alpha))
    return math.sqrt(ratio - 1.0)


def population_lmoments(p: FrechetParams) -> tuple[float, float]:
    """First two population L-moments.

    ``mu1 = lam**(1/a) Gamma(1-1/a)`` and ``mu2 = mu1 * (2**(1/a) - 1)``;
    both require ``alpha > 1``.
    """
    if p.alpha <= 1:
        raise InfiniteMomentError(f"L-moments infinite for alpha={p.alpha} <= 1")
    mu1 = math.exp(math.log(p.lam) / p.alpha + gammaln(1.0 - 1.0 / p.alpha))
    mu2 = mu1 * (2.0 ** (1.0 / p.alpha) - 1.0)
    return mu1, mu2


def fisher_information(p: FrechetParams, n: int) -> np.ndarray:
    """Expected information matrix of a size-``n`` sample.

    Symmetric positive definite, determinant ``n**2 pi**2 / (6 lam**2 alpha**2)``.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    c = 1.0 - EULER_GAMMA - math.log(p.lam)
    off = n * c / (p.lam * p.alpha)
    return np.array(
        [
            [n / p.lam**2, off],
            [off, n / p.alpha**2 * (math.pi**2 / 6.0 + c * c)],
        ]
    )


def cdf_kernels(t, p: FrechetParams):
    """Sensitivity kernels of the CDF used by the distance-based estimators.

    Returns ``(k1, k2)`` with ``k1 = t**-a * F(t)`` and
    ``k2 = lam * t**-a * log(t) * F(t)``.  In terms of derivatives,
    ``k1 = -dF/dlam`` and ``k2 = +dF/dalpha`` (signs verified against
    central finite differences in the test suite); only the common zero set
    matters to the estimating equations they appear in.
    """
    arr = _check_t(t)
    logt = np.log(arr)
    with np.errstate(over="ignore"):
        u = np.exp(-p.alpha * logt)
        f = np.exp(-p.lam * u)
        k1 = u * f
        k2 = p.lam * u * logt * f
    return _maybe_scalar(k1, t), _maybe_scalar(k2, t)


def rvs(p: FrechetParams, n: int, rng) -> Sample:
    """Draw ``n`` i.i.d. observations by inverse transform of uniforms.

    ``rng`` is a ``numpy.random.Generator`` or a seed acceptable to
    ``numpy.random.default_rng``.  The draw is deterministic given the seed.
    """
    if n < 2:
        raise DomainError(f"need n >= 2, got {n}")
    if not hasattr(rng, "random"):
        rng = np.random.default_rng(rng)
    u = rng.random(n)
    # random() can return exactly 0.0; push it into the open interval
    u = np.clip(u, 5e-324, None)
    return Sample(quantile(u, p))
