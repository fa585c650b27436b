"""Estimation toolkit for the two-parameter Frechet (inverse Weibull)
distribution: classical estimators, objective-Bayes MCMC, a Monte Carlo
study harness, and information-criterion model comparison."""

__version__ = "0.1.0"

from .distribution import (
    EULER_GAMMA,
    FrechetParams,
    Sample,
    cdf,
    cdf_kernels,
    coefficient_of_variation,
    fisher_information,
    log_pdf,
    mean_variance,
    pdf,
    population_lmoments,
    quantile,
    raw_moment,
    rvs,
)
from .errors import (
    BracketExpansionError,
    DegenerateSampleError,
    DomainError,
    FrechetFitError,
    InfeasibleEstimateError,
    InfiniteMomentError,
    UndefinedDiagnosticError,
)
from .estimators import (
    Estimate,
    Method,
    SolverConfig,
    SolverDiagnostics,
    asymptotic_ci,
    fit,
    fit_lme,
    fit_min_distance,
    fit_mle,
    fit_mme,
    fit_mps,
    fit_pce,
    profile_score,
)
from .bayes import (
    McmcConfig,
    PosteriorChain,
    conditional_lambda_quantile,
    geweke_z,
    log_marginal_posterior,
    mh_sample,
    posterior_mean_diagnostic,
    posterior_mean_proper,
    posterior_summary,
)
from .comparison import (
    MODELS,
    ComparisonReport,
    ModelFit,
    SurvivalOverlay,
    compare_models,
    fit_competitor,
    format_report,
    information_criteria,
    survival_overlay,
)
from .datasets import BUNDLED, load_bundled
from .simulation import (
    CLASSICAL_METHODS,
    StudyConfig,
    StudyResult,
    StudyRow,
    derive_seed,
    run_study,
)

__all__ = [
    "__version__",
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
    "Method",
    "SolverConfig",
    "SolverDiagnostics",
    "Estimate",
    "profile_score",
    "fit",
    "fit_mle",
    "fit_mme",
    "fit_lme",
    "fit_pce",
    "fit_min_distance",
    "fit_mps",
    "asymptotic_ci",
    "McmcConfig",
    "PosteriorChain",
    "log_marginal_posterior",
    "conditional_lambda_quantile",
    "posterior_mean_proper",
    "posterior_mean_diagnostic",
    "geweke_z",
    "mh_sample",
    "posterior_summary",
    "MODELS",
    "ModelFit",
    "ComparisonReport",
    "SurvivalOverlay",
    "fit_competitor",
    "information_criteria",
    "compare_models",
    "survival_overlay",
    "format_report",
    "BUNDLED",
    "load_bundled",
    "CLASSICAL_METHODS",
    "StudyConfig",
    "StudyRow",
    "StudyResult",
    "derive_seed",
    "run_study",
    "FrechetFitError",
    "DomainError",
    "InfiniteMomentError",
    "DegenerateSampleError",
    "InfeasibleEstimateError",
    "BracketExpansionError",
    "UndefinedDiagnosticError",
]
