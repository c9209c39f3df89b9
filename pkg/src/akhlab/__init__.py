"""akhlab: a laboratory for the space-periodic, time-localized NLS breather.

Closed-form evaluation, spectral verification of the fourth-order
variational characterization (including an exact rational-arithmetic
proof of the fifteen collected coefficient identities), split-step
Fourier evolution, and the quantitative instability experiments built on
the decaying gap field between the breather and its background.
"""

from .breather import (
    AkhmedievParams,
    AppendixFactors,
    akhmediev,
    appendix_factors,
    breather_field,
    derive_params,
    natural_grid,
    q_field,
    q_value,
    q_x_value,
    stokes,
    stokes_field,
)
from .exactpoly import DEFAULT_RELATIONS, WRONG_B_RELATIONS, ExactPoly, Relations
from .experiments import (
    DivergenceScan,
    InstabilityReport,
    MiGrowthFit,
    ModulationParams,
    QDecayScan,
    breather_perturbation_divergence,
    instability_report,
    mi_growth_rate,
    modulated_distance,
    q_decay_scan,
    random_band_limited,
    stokes_deficit_perturbation,
)
from .functionals import (
    FunctionalReport,
    energy,
    f_functional,
    functional_report,
    h_functional,
    mass,
)
from .solver import SolverConfig, Trajectory, evolve, evolve_perturbation
from .spectral import (
    PeriodicGrid,
    SampledField,
    SobolevConvention,
    Spectrum,
    homogeneous,
    inhomogeneous,
    inverse,
    l2_norm,
    quadrature,
    sobolev_norm,
    spectral_derivative,
    transform,
    translate,
)
from .variational import (
    CoefficientCheck,
    ResidualReport,
    StationarityResult,
    UnderResolvedGridWarning,
    appendix_residual,
    evaluate_R,
    h_stationarity,
    ode_lhs,
    operator_on_field,
    raw_coefficient_values,
    residual_report,
    verify_coefficients,
)

__version__ = "0.1.0"

__all__ = [
    "AkhmedievParams",
    "AppendixFactors",
    "CoefficientCheck",
    "DEFAULT_RELATIONS",
    "DivergenceScan",
    "ExactPoly",
    "FunctionalReport",
    "InstabilityReport",
    "MiGrowthFit",
    "ModulationParams",
    "PeriodicGrid",
    "QDecayScan",
    "Relations",
    "ResidualReport",
    "SampledField",
    "SobolevConvention",
    "SolverConfig",
    "Spectrum",
    "StationarityResult",
    "Trajectory",
    "UnderResolvedGridWarning",
    "WRONG_B_RELATIONS",
    "akhmediev",
    "appendix_factors",
    "appendix_residual",
    "breather_field",
    "breather_perturbation_divergence",
    "derive_params",
    "energy",
    "evaluate_R",
    "evolve",
    "evolve_perturbation",
    "f_functional",
    "functional_report",
    "h_functional",
    "h_stationarity",
    "homogeneous",
    "inhomogeneous",
    "instability_report",
    "inverse",
    "l2_norm",
    "mass",
    "mi_growth_rate",
    "modulated_distance",
    "natural_grid",
    "ode_lhs",
    "operator_on_field",
    "q_decay_scan",
    "q_field",
    "q_value",
    "q_x_value",
    "quadrature",
    "random_band_limited",
    "raw_coefficient_values",
    "residual_report",
    "sobolev_norm",
    "spectral_derivative",
    "stokes",
    "stokes_deficit_perturbation",
    "stokes_field",
    "transform",
    "translate",
    "verify_coefficients",
]
