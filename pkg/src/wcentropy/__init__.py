"""Weighted cumulative residual/cumulative entropies and their variants,
with a numerical check harness for the associated bounds and inequalities."""

from .empirical import (EmpiricalEstimate, convergence_experiment,
                        empirical_wce, empirical_wcre)
from .errors import (ConvergenceError, DivergenceError, DomainError,
                     IntegrandError, SupportError, WcentropyError)
from .harness import CheckInstance, CheckReport, run_check, run_suite
from .kernels import GaussianSmoothingKernel, GridMatrixKernel
from .models import (Empirical, Exponential, Gamma, Gaussian, Mixture,
                     Uniform, UnivariateModel, Weibull, point_mass)
from .multivariate import (DerivedWeight, MVWeight, conditional_wcre,
                           derived_weight, gaussian_alpha_star, gaussian_rho,
                           independent_decomposition, joint_wce, joint_wcre,
                           mutual_wcre)
from .mvmodels import (FgmBivariate, FgmMarkovChain, FgmTrivariate,
                       GaussianMv, IndependentProduct, MultivariateModel)
from .quadrature import (IntegralResult, QuadratureSpec, integrate_1d,
                         integrate_nd)
from .univariate import (EntropyValue, alpha_phi, convolution_model,
                         family_closed_form_wcre, fenchel_upper_bound,
                         finiteness_certificate, gini_psi_statistic,
                         log_plus_moment_bound, past_integral_mean,
                         relative_wcre, residual_integral_mean,
                         shannon_entropy, shifted_weight,
                         survival_identity_value, wce, wce_via_mean, wcre,
                         wcre_via_mean)
from .weights import WeightFunction, psi, psi_star

__version__ = "0.1.0"

__all__ = [
    "WeightFunction", "psi", "psi_star",
    "UnivariateModel", "Uniform", "Exponential", "Weibull", "Gaussian",
    "Gamma", "Empirical", "Mixture", "point_mass",
    "MultivariateModel", "IndependentProduct", "FgmBivariate",
    "FgmTrivariate", "FgmMarkovChain", "GaussianMv",
    "QuadratureSpec", "IntegralResult", "integrate_1d", "integrate_nd",
    "EntropyValue", "wcre", "wce", "wcre_via_mean", "wce_via_mean",
    "residual_integral_mean", "past_integral_mean", "relative_wcre",
    "alpha_phi", "shannon_entropy", "gini_psi_statistic",
    "survival_identity_value", "fenchel_upper_bound",
    "log_plus_moment_bound", "convolution_model", "shifted_weight",
    "finiteness_certificate", "family_closed_form_wcre",
    "MVWeight", "DerivedWeight", "joint_wcre", "joint_wce",
    "conditional_wcre", "mutual_wcre", "derived_weight",
    "independent_decomposition", "gaussian_alpha_star", "gaussian_rho",
    "EmpiricalEstimate", "empirical_wcre", "empirical_wce",
    "convergence_experiment",
    "GaussianSmoothingKernel", "GridMatrixKernel",
    "CheckInstance", "CheckReport", "run_check", "run_suite",
    "WcentropyError", "DomainError", "SupportError", "DivergenceError",
    "ConvergenceError", "IntegrandError",
]
