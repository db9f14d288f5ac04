"""gouproc: generalized Ornstein-Uhlenbeck type processes.

Simulation under Gaussian, symmetric alpha-stable, and Poisson noises;
series evaluation of stable densities; dependence structure
(autocovariance, codifference); Levy triplets of the marginals; MLE and
MCMC estimation of the Cosine-kernel recursion; goodness-of-fit tests
for stable residuals.
"""

from .bayes import (
    McmcConfig,
    PosteriorSummary,
    chain_diagnostics,
    effective_sample_size,
    log_posterior,
    log_prior,
    mcmc_sample,
)
from .dependence import (
    acf_theoretical,
    codiff_empirical,
    codiff_empirical_complex,
    codiff_theoretical_cosine,
    variance_theoretical,
)
from .errors import DegeneracyError, GouprocError, NumericError
from .gof import GofResult, ad_stat, bootstrap_pvalue, ks_stat, mc_stat, mks_stat, run_gof, standardize
from .kernels import (
    Airy,
    Cosine,
    Exponential,
    KernelSpec,
    QuadraticGaussian,
    eval_kernel,
    kernel_ode_residual,
)
from .levy import (
    LevyTriplet,
    TripletSummary,
    nu_generic,
    scale_param_stable,
    triplet_cosine_poisson,
    triplet_ou_poisson,
)
from .mle import (
    EtaEstimate,
    StudyConfig,
    StudyReport,
    cosine_residuals,
    fit_mle,
    neg_log_likelihood,
    residual_stable_scale,
    run_study,
)
from .simulate import (
    BrownianStd,
    Path,
    PoissonUnitJump,
    SymmetricStable,
    sigma_eps_cosine,
    sigma_W_quadratic,
    simulate_cosine,
    simulate_general,
    simulate_ou,
    simulate_quadratic,
)
from .stable import (
    StableParams,
    fit_alpha_symmetric,
    sample_stable,
    stable_cdf,
    stable_cdf_fn,
    stable_cf,
    stable_pdf_series,
)
from .streams import poisson_event_times, substream
from .transforms import aggregate_returns, difference, log_returns

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "GouprocError",
    "NumericError",
    "DegeneracyError",
    # kernels
    "Exponential",
    "Cosine",
    "QuadraticGaussian",
    "Airy",
    "KernelSpec",
    "eval_kernel",
    "kernel_ode_residual",
    # stable
    "StableParams",
    "stable_pdf_series",
    "stable_cdf",
    "stable_cdf_fn",
    "stable_cf",
    "sample_stable",
    "fit_alpha_symmetric",
    # simulation
    "BrownianStd",
    "SymmetricStable",
    "PoissonUnitJump",
    "Path",
    "simulate_cosine",
    "simulate_quadratic",
    "simulate_ou",
    "simulate_general",
    "sigma_eps_cosine",
    "sigma_W_quadratic",
    # streams
    "substream",
    "poisson_event_times",
    # dependence
    "acf_theoretical",
    "variance_theoretical",
    "codiff_theoretical_cosine",
    "codiff_empirical",
    "codiff_empirical_complex",
    # levy
    "LevyTriplet",
    "TripletSummary",
    "scale_param_stable",
    "triplet_ou_poisson",
    "triplet_cosine_poisson",
    "nu_generic",
    # mle
    "cosine_residuals",
    "neg_log_likelihood",
    "fit_mle",
    "residual_stable_scale",
    "EtaEstimate",
    "StudyConfig",
    "StudyReport",
    "run_study",
    # bayes
    "McmcConfig",
    "log_prior",
    "log_posterior",
    "mcmc_sample",
    "chain_diagnostics",
    "PosteriorSummary",
    "effective_sample_size",
    # gof
    "standardize",
    "ks_stat",
    "ad_stat",
    "mks_stat",
    "mc_stat",
    "bootstrap_pvalue",
    "GofResult",
    "run_gof",
    # transforms
    "log_returns",
    "aggregate_returns",
    "difference",
]
