"""Sharp constants of the interpolation inequality

    ||u||_{m+1} <= C ||u||_{q+1}^{1-theta} ||grad u||_p^theta

on R^d, together with the radial profiles that attain them. Closed forms
where they exist, a shooting/quadrature pipeline everywhere else, and a
verification layer that re-derives both from independent identities.
"""

from .core import (INFINITY, AdmissibilityError, Exponents, ParamSet, Regime,
                   alpha_peak, sigma_exponent, theta_exponent,
                   unit_ball_volume, unit_sphere_area, validate)
from .closed_forms import (FamilyMismatchError, SobolevCriticalError,
                           barenblatt_profile, closed_Mc, closed_constant_1d,
                           delta_mass_1d, dpd_constant, linfty_profile_q0,
                           nash_constant, positive_profile,
                           profile_1d_finite_m, profile_1d_m_infinity,
                           sobolev_constant)
from .profiles import (Algebraic, ClosedForm, Exponential, Finite, Grid,
                       Infinite, RadialProfile)
from .solver import (BestConstantResult, BracketError,
                     ExtrapolationDivergence, Method, NonConvergence,
                     NonIntegrable, ShootingConfig, SolverError,
                     best_constant_numeric, constant_from_mass,
                     gradient_norm_p, radial_norm, shoot_finite_m,
                     shoot_infinite_m)
from .verify import (DecayReport, EnergyReport, InsufficientTail, LimitReport,
                     NashReport, ScalingReport, StraussReport, TestFunction,
                     VerificationSample, check_inequality, decay_check,
                     energy_report, extremal_ratio, inequality_ratio,
                     limit_study, nash_eigen_check, profile_as_test_function,
                     sample_test_functions, scaling_reduction_check,
                     strauss_bound_check)

__version__ = "0.1.0"

__all__ = [
    "INFINITY", "AdmissibilityError", "Exponents", "ParamSet", "Regime",
    "alpha_peak", "sigma_exponent", "theta_exponent", "unit_ball_volume",
    "unit_sphere_area", "validate",
    "FamilyMismatchError", "SobolevCriticalError", "barenblatt_profile",
    "closed_Mc", "closed_constant_1d", "delta_mass_1d", "dpd_constant",
    "linfty_profile_q0", "nash_constant", "positive_profile",
    "profile_1d_finite_m", "profile_1d_m_infinity", "sobolev_constant",
    "Algebraic", "ClosedForm", "Exponential", "Finite", "Grid", "Infinite",
    "RadialProfile",
    "BestConstantResult", "BracketError", "ExtrapolationDivergence", "Method",
    "NonConvergence", "NonIntegrable", "ShootingConfig", "SolverError",
    "best_constant_numeric", "constant_from_mass", "gradient_norm_p",
    "radial_norm", "shoot_finite_m", "shoot_infinite_m",
    "DecayReport", "EnergyReport", "InsufficientTail", "LimitReport",
    "NashReport", "ScalingReport", "StraussReport", "TestFunction",
    "VerificationSample", "check_inequality", "decay_check", "energy_report",
    "extremal_ratio", "inequality_ratio", "limit_study", "nash_eigen_check",
    "profile_as_test_function", "sample_test_functions",
    "scaling_reduction_check", "strauss_bound_check",
    "__version__",
]
