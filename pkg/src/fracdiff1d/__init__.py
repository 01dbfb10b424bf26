"""One-sided fractional diffusion on the unit interval.

Grünwald-Letnikov evaluation of Riemann-Liouville, Patie-Simon, and Caputo
derivatives, iteration matrices for absorbing/reflecting boundary
conditions, explicit/implicit Euler stepping with a mass ledger, and
diagnostics for conservation, positivity, steady states, flux, and decay.
"""

from .diagnostics import (
    DiagnosticsReport,
    NegativityResult,
    SteadyStateKind,
    SteadyStateReference,
    boundary_flux_check,
    convergence_order,
    decay_rate,
    l1_distance_interior,
    negativity_scan,
    steady_state_reference,
    summarize,
    total_mass,
)
from .errors import (
    DegenerateInput,
    DimensionMismatch,
    EmptySeries,
    FracDiffError,
    InvalidOrder,
    InvalidSpec,
    SingularSystem,
    StabilityViolation,
    UnsupportedCombination,
    UnsupportedForm,
    UsageError,
)
from .grunwald import (
    DerivativeForm,
    GridFunction,
    GrunwaldWeights,
    caputo_derivative_grid,
    flux_profile,
    grunwald_weights,
    ps_derivative_grid,
    rl_derivative_grid,
    weight_recursion_gap,
    weight_sum_gap,
    weight_tail_gap,
)
from .operators import (
    BoundaryCondition,
    IterationMatrix,
    SchemeSpec,
    absorbed_rates,
    build_matrix,
    row_sums,
)
from .timestepper import (
    InitialCondition,
    Method,
    SolverConfig,
    TimeSeries,
    explicit_step,
    implicit_step,
    run_simulation,
    sine_bump_profile,
    stability_limit,
    tent_profile,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "DegenerateInput",
    "DerivativeForm",
    "DiagnosticsReport",
    "DimensionMismatch",
    "EmptySeries",
    "FracDiffError",
    "GridFunction",
    "GrunwaldWeights",
    "InitialCondition",
    "InvalidOrder",
    "InvalidSpec",
    "IterationMatrix",
    "Method",
    "NegativityResult",
    "SchemeSpec",
    "SingularSystem",
    "SolverConfig",
    "StabilityViolation",
    "SteadyStateKind",
    "SteadyStateReference",
    "TimeSeries",
    "UnsupportedCombination",
    "UnsupportedForm",
    "UsageError",
    "absorbed_rates",
    "boundary_flux_check",
    "build_matrix",
    "caputo_derivative_grid",
    "convergence_order",
    "decay_rate",
    "explicit_step",
    "flux_profile",
    "grunwald_weights",
    "implicit_step",
    "l1_distance_interior",
    "negativity_scan",
    "ps_derivative_grid",
    "rl_derivative_grid",
    "row_sums",
    "run_simulation",
    "sine_bump_profile",
    "stability_limit",
    "steady_state_reference",
    "summarize",
    "tent_profile",
    "total_mass",
    "weight_recursion_gap",
    "weight_sum_gap",
    "weight_tail_gap",
]
