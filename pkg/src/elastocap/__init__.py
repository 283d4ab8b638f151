"""Elasto-capillary equilibrium of spherical cavities in soft solids.

Layers, bottom up: :mod:`~elastocap.tensor` (small tensors on curved
metrics), :mod:`~elastocap.geometry` (curvature of metric fields),
:mod:`~elastocap.constitutive` (bulk, fluid and surface hyperelasticity) and
:mod:`~elastocap.sphere` (the radial cavity solver).  The command-line tool
lives in :mod:`~elastocap.cli`.
"""

__version__ = "0.1.0"

from .errors import (BracketingError, ChartError, ConfigError, DefinitenessError, DomainError,
                     ElastocapError, IncompressibilityError, NormalizationError,
                     UnsupportedModelError)
from .kernels import BACKEND
from .sphere import (CavitySolution, NondimensionalProblem, SolverOptions, SphereProblem,
                     StressProfile, SweepRow, elasto_capillary, equilibrium_residual,
                     initial_elasto_capillary, laplace_residual, pressure_sweep,
                     radial_stress_closed_form, radial_stress_quadrature, relax,
                     solve_stretch, stress_profile, surface_tension)

__all__ = [
    "__version__", "BACKEND",
    "BracketingError", "ChartError", "ConfigError", "DefinitenessError", "DomainError",
    "ElastocapError", "IncompressibilityError", "NormalizationError", "UnsupportedModelError",
    "CavitySolution", "NondimensionalProblem", "SolverOptions", "SphereProblem",
    "StressProfile", "SweepRow", "elasto_capillary", "equilibrium_residual",
    "initial_elasto_capillary", "laplace_residual", "pressure_sweep",
    "radial_stress_closed_form", "radial_stress_quadrature", "relax", "solve_stretch",
    "stress_profile", "surface_tension",
]
