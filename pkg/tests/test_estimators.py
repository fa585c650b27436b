"""Frequentist estimators: hand-checked values, exact-recovery fixed
points, stationarity certificates, and cross-method consistency.

Every estimator has a sample construction for which the generating
parameters are its exact finite-sample solution:

* LSE / WLSE / PCE / MPS: order statistics at the quantiles of
  p_i = i/(n+1) (all spacings equal, residuals identically zero);
* CME / ADE: quantiles at (2i-1)/(2n), which zero both estimating
  equations term by term;
* MME: a symmetric three-point sample tuned to the population mean and CV;
* LME: the two-point sample {mu1 - mu2, mu1 + mu2};
* MLE: quantiles at exp(-w_i) where sum(w) = n and
  sum((w-1) log w) = n, which zero both likelihood equations (a scalar
  root for n = 2, solved here with mpmath as an independent oracle).
"""

import math

import mpmath
import numpy as np
import pytest
from scipy.optimize import brentq

from frechetfit import (
    DegenerateSampleError,
    DomainError,
    FrechetParams,
    InfeasibleEstimateError,
    Method,
    Sample,
    SolverConfig,
    asymptotic_ci,
    cdf,
    coefficient_of_variation,
    fisher_information,
    fit,
    fit_lme,
    fit_min_distance,
    fit_mle,
    fit_mme,
    fit_mps,
    fit_pce,
    population_lmoments,
    profile_score,
    quantile,
    raw_moment,
    rvs,
)
from frechetfit.estimators import _lme_alpha, _objective_mps

mpmath.mp.dps = 40

TRUTH = FrechetParams(2.0, 4.0)


def quantile_sample(n, positions, p=TRUTH):
    i = np.arange(1, n + 1, dtype=float)
    return Sample(quantile(positions(i, n), p))


def weibull_positions(i, n):
    return i / (n + 1.0)


def hazen_like_positions(i, n):
    return (2.0 * i - 1.0) / (2.0 * n)


class TestProfileScore:
    def test_hand_values(self):
        s = Sample([1.0, 2.0])
        # n/a - sum(log t) + n * sum(t**-a log t) / sum(t**-a), evaluated
        # independently with mpmath
        def oracle(a):
            a = mpmath.mpf(a)
            terms = [mpmath.mpf(t) ** (-a) for t in (1, 2)]
            wlog = sum(w * mpmath.log(t) for w, t in zip(terms, (1, 2)))
            return float(2 / a - mpmath.log(2) + 2 * wlog / sum(terms))

        assert profile_score(3.0, s) == pytest.approx(oracle(3.0), rel=1e-13)
        assert profile_score(4.0, s) == pytest.approx(oracle(4.0), rel=1e-13)
        assert profile_score(3.0, s) == pytest.approx(0.12755219289782033, rel=1e-12)
        assert profile_score(4.0, s) == pytest.approx(-0.11160045343524584, rel=1e-12)

    def test_limits(self):
        s = Sample([1.0, 2.0])
        assert profile_score(1e-3, s) > 1e3
        u_min = s.min / math.exp(s.sum_log / s.n)  # min over geometric mean
        assert profile_score(1e3, s) == pytest.approx(s.n * math.log(u_min), abs=0.01)
        assert profile_score(1e3, s) < 0

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            profile_score(1.0, Sample([3.0, 3.0, 3.0]))

    def test_strictly_decreasing_on_random_samples(self):
        rng = np.random.default_rng(314)
        grid = np.exp(np.linspace(math.log(0.01), math.log(100.0), 1000))
        for _ in range(100):
            n = int(rng.integers(5, 60))
            p = FrechetParams(rng.uniform(0.2, 20.0), rng.uniform(0.5, 8.0))
            s = rvs(p, n, rng)
            vals = np.array([profile_score(a, s) for a in grid])
            assert np.all(np.diff(vals) < 0)
            assert vals[0] > 0 > vals[-1]  # bracketing sign change


class TestMle:
    def test_two_point_sample(self):
        s = Sample([1.0, 2.0])
        est = fit_mle(s)

        # independent oracle: mpmath root of the raw score expression
        def g(a):
            terms = [mpmath.mpf(t) ** (-a) for t in (1, 2)]
            wlog = sum(w * mpmath.log(t) for w, t in zip(terms, (1, 2)))
            return 2 / a - mpmath.log(2) + 2 * wlog / sum(terms)

        a_star = mpmath.findroot(g, mpmath.mpf("3.5"))
        lam_star = 2 / sum(mpmath.mpf(t) ** (-a_star) for t in (1, 2))
        assert est.params.alpha == pytest.approx(float(a_star), rel=1e-10)
        assert est.params.lam == pytest.approx(float(lam_star), rel=1e-10)
        assert est.params.alpha == pytest.approx(3.4615408499204947, rel=1e-9)
        assert est.params.lam == pytest.approx(1.8335565596009649, rel=1e-9)

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            fit_mle(Sample([2.0, 2.0]))

    def test_consistency_large_sample(self):
        s = rvs(TRUTH, 10_000, np.random.default_rng(2018))
        est = fit_mle(s)
        # 0.15 is ~3 asymptotic SDs at this n
        assert abs(est.params.alpha - 4.0) < 0.15
        assert abs(est.params.lam - 2.0) < 0.15

    def test_stationarity_equations(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            s = rvs(FrechetParams(rng.uniform(0.5, 5), rng.uniform(0.8, 6)), 50, rng)
            est = fit_mle(s)
            lam, alpha = est.params.lam, est.params.alpha
            t = s.values
            eq1 = s.n / lam - np.sum(t**-alpha)
            eq2 = s.n / alpha - s.sum_log + lam * np.sum(t**-alpha * np.log(t))
            assert abs(eq1) < 1e-8 * s.n
            assert abs(eq2) < 1e-8 * s.n
            assert est.diagnostics.converged

    def test_scale_equivariance(self):
        rng = np.random.default_rng(11)
        s = rvs(TRUTH, 80, rng)
        base = fit_mle(s)
        c = 3.7
        scaled = fit_mle(Sample(c * s.values))
        assert scaled.params.alpha == pytest.approx(base.params.alpha, rel=1e-8)
        assert scaled.params.lam == pytest.approx(
            base.params.lam * c**base.params.alpha, rel=1e-8
        )

    def test_exact_recovery_sample(self):
        # quantiles exp(-w) with sum(w)=2 and (w1-1)log(w1/(2-w1)) = 2
        f = lambda w: float((mpmath.mpf(w) - 1) * mpmath.log(mpmath.mpf(w) / (2 - mpmath.mpf(w))) - 2)
        w1 = brentq(f, 1e-9, 1 - 1e-9, xtol=1e-15)
        qs = np.exp([-w1, -(2.0 - w1)])
        s = Sample(quantile(qs, TRUTH))
        est = fit_mle(s)
        assert est.params.lam == pytest.approx(TRUTH.lam, abs=1e-6)
        assert est.params.alpha == pytest.approx(TRUTH.alpha, abs=1e-6)

    def test_ci_attached(self):
        est = fit_mle(rvs(TRUTH, 100, np.random.default_rng(3)))
        (llo, lhi), (alo, ahi) = est.ci95
        assert 0 <= llo < est.params.lam < lhi
        assert 0 <= alo < est.params.alpha < ahi


class TestMme:
    def three_point_sample(self, p):
        mean = raw_moment(1, p)
        cv = coefficient_of_variation(p.alpha)
        h = mean * cv  # SD (divisor n-1) of {m-h, m, m+h} is exactly h
        assert h < mean
        return Sample([mean - h, mean, mean + h])

    def test_roundtrip_exact_cv(self):
        s = self.three_point_sample(TRUTH)
        est = fit_mme(s)
        assert est.params.alpha == pytest.approx(4.0, abs=1e-6)
        assert est.params.lam == pytest.approx(2.0, rel=1e-5)
        assert est.diagnostics.converged

    def test_small_cv_is_infeasible(self):
        with pytest.raises(InfeasibleEstimateError):
            fit_mme(Sample([1.0, 1.0001, 0.9999]))

    def test_huge_cv_still_bracketed(self):
        # CV ~ sqrt(n) with one dominant value; CV(alpha) -> inf as
        # alpha -> 2+, so even CV ~ 14 has a root just above 2
        values = [1e-3] * 199 + [1e3]
        s = Sample(values)
        cv = float(np.std(s.values, ddof=1) / s.values.mean())
        assert cv > 10
        est = fit_mme(s)
        assert 2.0 < est.params.alpha < 2.2

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            fit_mme(Sample([5.0, 5.0, 5.0]))

    def test_scaling_law(self):
        rng = np.random.default_rng(8)
        s = rvs(TRUTH, 60, rng)
        base = fit_mme(s)
        c = 2.5
        scaled = fit_mme(Sample(c * s.values))
        assert scaled.params.alpha == pytest.approx(base.params.alpha, rel=1e-9)
        assert scaled.params.lam == pytest.approx(base.params.lam * c**base.params.alpha, rel=1e-9)


class TestLme:
    def test_hand_value(self):
        s = Sample([1.0, 2.0, 4.0])
        est = fit_lme(s)
        # log2 / (log2 + log(sum (i-1) t_(i)) - log(n(n-1) tbar)), by hand
        expected_alpha = math.log(2) / (math.log(2) + math.log(10.0) - math.log(14.0))
        assert est.params.alpha == pytest.approx(expected_alpha, rel=1e-14)
        lam_oracle = float(
            (mpmath.mpf(7) / 3 / mpmath.gamma(1 - 1 / mpmath.mpf(expected_alpha)))
            ** mpmath.mpf(expected_alpha)
        )
        assert est.params.lam == pytest.approx(lam_oracle, rel=1e-12)
        assert est.params.alpha == pytest.approx(1.943358209874729, rel=1e-12)
        assert est.params.lam == pytest.approx(1.6122797767567052, rel=1e-12)

    def test_exact_recovery_two_points(self):
        mu1, mu2 = population_lmoments(TRUTH)
        est = fit_lme(Sample([mu1 - mu2, mu1 + mu2]))
        assert est.params.lam == pytest.approx(TRUTH.lam, rel=1e-9)
        assert est.params.alpha == pytest.approx(TRUTH.alpha, rel=1e-9)

    def test_bit_identical_repeats(self):
        s = Sample([3.0, 1.5, 9.0, 2.2])
        a = fit_lme(s)
        b = fit_lme(s)
        assert a.params.lam == b.params.lam and a.params.alpha == b.params.alpha
        assert a.diagnostics.iterations == 0

    def test_implied_alpha_always_above_one(self):
        # l2 < l1 for positive data, so the closed form always exceeds 1;
        # the infeasibility guard is defensive only
        rng = np.random.default_rng(21)
        for _ in range(200):
            n = int(rng.integers(2, 40))
            x = np.exp(rng.normal(0, 2, n)) + 1e-9
            if np.all(x == x[0]):
                continue
            assert _lme_alpha(Sample(x)) > 1.0

    def test_degenerate(self):
        with pytest.raises(DegenerateSampleError):
            fit_lme(Sample([2.0, 2.0]))


class TestPce:
    def test_exact_recovery(self):
        s = quantile_sample(20, weibull_positions)
        est = fit_pce(s)
        assert est.params.lam == pytest.approx(2.0, abs=1e-4)
        assert est.params.alpha == pytest.approx(4.0, abs=1e-4)
        assert est.diagnostics.objective < 1e-12
        assert est.diagnostics.converged

    def test_truth_beats_scale_perturbation(self):
        s = quantile_sample(20, weibull_positions)
        p = s.sorted_values  # == quantiles at truth
        i = np.arange(1, 21, dtype=float)
        probs = i / 21.0

        def objective(params):
            return float(np.sum((s.sorted_values - quantile(probs, params)) ** 2))

        assert objective(TRUTH) <= objective(FrechetParams(4.0, 4.0))

    def test_matches_grid_search(self):
        s = rvs(TRUTH, 200, np.random.default_rng(17))
        est = fit_pce(s)
        assert abs(est.params.alpha - 4.0) < 1.0
        probs = np.arange(1, 201, dtype=float) / 201.0
        st = s.sorted_values

        def objective(lam, alpha):
            q = ((1.0 / lam) * np.log(1.0 / probs)) ** (-1.0 / alpha)
            return float(np.sum((st - q) ** 2))

        # coarse global sweep cannot beat the optimizer
        lam_g = np.exp(np.linspace(math.log(0.2), math.log(20), 200))
        alpha_g = np.exp(np.linspace(math.log(1.0), math.log(16), 200))
        coarse = min(objective(l, a) for l in lam_g for a in alpha_g)
        assert est.diagnostics.objective <= coarse + 1e-9
        # fine local sweep around the optimum agrees to 1e-6
        lam_g = est.params.lam * np.exp(np.linspace(-0.01, 0.01, 200))
        alpha_g = est.params.alpha * np.exp(np.linspace(-0.01, 0.01, 200))
        fine = min(objective(l, a) for l in lam_g for a in alpha_g)
        assert fine >= est.diagnostics.objective - 1e-12
        assert fine - est.diagnostics.objective < 1e-6


class TestMinDistance:
    @pytest.mark.parametrize("kind", ["lse", "wlse"])
    def test_exact_recovery_weibull_positions(self, kind):
        s = quantile_sample(20, weibull_positions)
        est = fit_min_distance(s, kind)
        assert est.params.lam == pytest.approx(2.0, abs=1e-4)
        assert est.params.alpha == pytest.approx(4.0, abs=1e-4)
        assert est.diagnostics.converged

    @pytest.mark.parametrize("kind", ["cme", "ade"])
    def test_exact_recovery_midpoint_positions(self, kind):
        # (2i-1)/(2n) zeroes both estimating equations of CME and ADE
        s = quantile_sample(20, hazen_like_positions)
        est = fit_min_distance(s, kind)
        assert est.params.lam == pytest.approx(2.0, abs=1e-4)
        assert est.params.alpha == pytest.approx(4.0, abs=1e-4)
        assert est.diagnostics.converged

    def test_cme_floor(self):
        rng = np.random.default_rng(23)
        s = rvs(TRUTH, 25, rng)
        est = fit_min_distance(s, "cme")
        assert est.diagnostics.objective >= 1.0 / (12 * s.n)

    def test_invalid_kind(self):
        with pytest.raises((DomainError, ValueError)):
            fit_min_distance(Sample([1.0, 2.0]), "mle")

    @pytest.mark.parametrize("kind", ["lse", "wlse", "cme", "ade"])
    def test_objective_beats_mle_point(self, kind):
        s = rvs(TRUTH, 100, np.random.default_rng(29))
        mle = fit_mle(s)
        est = fit_min_distance(s, kind)
        from frechetfit.estimators import (
            _guarded,
            _objective_ade,
            _objective_cme,
            _objective_lse,
        )
        cfg = SolverConfig()
        builders = {
            "lse": lambda: _objective_lse(s, cfg, weighted=False),
            "wlse": lambda: _objective_lse(s, cfg, weighted=True),
            "cme": lambda: _objective_cme(s, cfg),
            "ade": lambda: _objective_ade(s, cfg),
        }
        obj = _guarded(builders[kind]())
        at_mle = obj(np.log([mle.params.lam, mle.params.alpha]))
        assert est.diagnostics.objective <= at_mle + 1e-10


class TestMps:
    def test_tie_uses_log_density(self):
        s = Sample([1.0, 1.0, 2.0])
        cfg = SolverConfig()
        neg_h = _objective_mps(s, cfg)
        lam, alpha = 1.3, 2.1

        # direct formula: spacings from the CDF, the tied slot replaced by
        # the density at the tied point
        F = lambda t: math.exp(-lam * t**-alpha)
        f = lambda t: lam * alpha * t ** (-alpha - 1.0) * math.exp(-lam * t**-alpha)
        terms = [math.log(F(1.0)), math.log(f(1.0)), math.log(F(2.0) - F(1.0)),
                 math.log(1.0 - F(2.0))]
        expected = -sum(terms) / 4.0
        assert neg_h(np.log([lam, alpha])) == pytest.approx(expected, rel=1e-12)

    def test_spacings_telescope_to_one(self):
        rng = np.random.default_rng(31)
        for _ in range(5):
            s = rvs(FrechetParams(rng.uniform(0.5, 4), rng.uniform(0.8, 6)), 30, rng)
            p = FrechetParams(rng.uniform(0.5, 4), rng.uniform(0.8, 6))
            F = cdf(s.sorted_values, p)
            d = np.diff(np.concatenate(([0.0], F, [1.0])))
            assert d.sum() == pytest.approx(1.0, abs=1e-12)

    def test_exact_recovery(self):
        # equal spacings maximize the product for every n (AM-GM), and only
        # the generating parameters equalize them
        s = quantile_sample(20, weibull_positions)
        est = fit_mps(s)
        assert est.params.lam == pytest.approx(2.0, abs=1e-4)
        assert est.params.alpha == pytest.approx(4.0, abs=1e-4)

    def test_optimum_beats_mle_point(self):
        s = rvs(TRUTH, 100, np.random.default_rng(37))
        mle = fit_mle(s)
        est = fit_mps(s)
        neg_h = _objective_mps(s, SolverConfig())
        h_opt = -est.diagnostics.objective
        h_mle = -neg_h(np.log([mle.params.lam, mle.params.alpha]))
        assert h_opt >= h_mle - 1e-10

    def test_ci_attached(self):
        est = fit_mps(rvs(TRUTH, 60, np.random.default_rng(41)))
        assert est.ci95 is not None


class TestAsymptoticCi:
    def test_width_scales_with_root_n(self):
        rng = np.random.default_rng(43)
        s1 = rvs(TRUTH, 400, rng)
        s2 = rvs(TRUTH, 1600, rng)
        w = []
        for s in (s1, s2):
            est = fit_mle(s)
            (llo, lhi), _ = est.ci95
            w.append(lhi - llo)
        assert w[0] / w[1] == pytest.approx(2.0, rel=0.05)

    def test_alpha_sd_closed_form(self):
        # [I^-1]_22 = 6 alpha**2 / (n pi**2) via the determinant identity
        p = FrechetParams(1.0, 1.0)
        n = 100
        est_like = fit_mle(rvs(p, 50, np.random.default_rng(47)))
        info = fisher_information(p, n)
        det = info[0, 0] * info[1, 1] - info[0, 1] ** 2
        sd = math.sqrt(info[0, 0] / det)
        assert sd == pytest.approx(math.sqrt(6.0 / n) / math.pi, rel=1e-12)

    def test_z_value(self):
        from frechetfit.estimators import Estimate, SolverDiagnostics

        p = FrechetParams(1.0, 1.0)
        est = Estimate(Method.MLE, p, None, SolverDiagnostics(0, 0.0, 0.0, True))
        s = rvs(p, 100, np.random.default_rng(51))
        (_, _), (alo, ahi) = asymptotic_ci(est, s, 0.95)
        info = fisher_information(p, s.n)
        det = info[0, 0] * info[1, 1] - info[0, 1] ** 2
        sd = math.sqrt(info[0, 0] / det)
        assert (ahi - p.alpha) / sd == pytest.approx(1.959964, abs=1e-6)

    def test_only_mle_and_mps(self):
        s = Sample([1.0, 2.0, 3.0])
        est = fit_lme(s)
        assert est.ci95 is None
        with pytest.raises(DomainError):
            asymptotic_ci(est, s)

    def test_truncated_at_zero(self):
        est = fit_mle(Sample([1.0, 2.0]))
        (llo, _), (alo, _) = est.ci95
        assert llo >= 0.0 and alo >= 0.0


class TestDispatch:
    def test_fit_routes_all_methods(self):
        s = rvs(TRUTH, 40, np.random.default_rng(53))
        for m in Method:
            est = fit(s, m.value)
            assert est.method is m
            assert est.params.lam > 0 and est.params.alpha > 0

    def test_exact_quantile_recovery_all_nine(self):
        """Each estimator recovers the truth from its matched sample to 1e-4."""
        mu1, mu2 = population_lmoments(TRUTH)
        mean = raw_moment(1, TRUTH)
        h = mean * coefficient_of_variation(TRUTH.alpha)
        f = lambda w: (w - 1.0) * math.log(w / (2.0 - w)) - 2.0
        w1 = brentq(f, 1e-9, 1 - 1e-9, xtol=1e-15)
        samples = {
            "mle": Sample(quantile(np.exp([-w1, w1 - 2.0]), TRUTH)),
            "mme": Sample([mean - h, mean, mean + h]),
            "lme": Sample([mu1 - mu2, mu1 + mu2]),
            "pce": quantile_sample(20, weibull_positions),
            "lse": quantile_sample(20, weibull_positions),
            "wlse": quantile_sample(20, weibull_positions),
            "mps": quantile_sample(20, weibull_positions),
            "cme": quantile_sample(20, hazen_like_positions),
            "ade": quantile_sample(20, hazen_like_positions),
        }
        for m, s in samples.items():
            est = fit(s, m)
            assert est.params.lam == pytest.approx(TRUTH.lam, abs=1e-4), m
            assert est.params.alpha == pytest.approx(TRUTH.alpha, abs=1e-4), m
