"""Willmore obstacle problems under Dirichlet boundary conditions:
explicit elastica solutions, energies and universal bounds, glued
catenoid-circle obstacles, and a Hermite-element constrained minimizer.
"""

from .bounds import (
    GAlphaReport,
    RevolutionEnvelope,
    SlopeThresholdReport,
    UniversalBoundReport,
    dirichlet_universal_bound,
    g_alpha,
    max_g_alpha,
    navier_bound,
    revolution_bounds,
    slope_bound_1d,
    slope_threshold_check,
)
from .elastica import (
    ElasticaSolution,
    RealCurve,
    hat_obstacle,
    odd_extension,
    symmetric_solution,
)
from .energy import (
    EnergyBreakdown,
    auxiliary_v,
    first_variation_1d,
    first_variation_hyperbolic,
    willmore_1d,
    willmore_hyperbolic,
    willmore_revolution,
)
from .errors import (
    BoundaryConditionError,
    DomainError,
    GluingResidualError,
    InfeasibleStartError,
    MaxIterationsError,
    NonConvergenceError,
    NoSignChangeError,
    PositivityError,
    SideViolationError,
    UnimodalityError,
)
from .minimize import (
    DiscreteProfile,
    MinimizeConfig,
    MinimizeReport,
    free_minimize_revolution,
    minimize_1d,
    minimize_revolution,
    probe_nonexistence,
    verify_comparison,
    verify_v_structure,
    verify_variational_inequality,
)
from .obstacles import (
    AdmissibilityReport,
    Alpha0Report,
    ObstacleSpec,
    RevolutionProfile,
    alpha0,
    catenoid_circle_profiles,
    check_admissibility,
    cone_obstacle,
    enlarged_profile_obstacle,
    pushed_down_admissible,
    pushed_down_profile,
    shifted_hat_obstacle,
    small_alpha_profile,
)
from .specialfn import (
    QuadratureRule,
    RootBracket,
    c0,
    find_root,
    g_inverse,
    g_profile,
    scan_roots,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
