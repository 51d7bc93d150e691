"""Shared exception types.

Callers that reach a CLI boundary map these onto exit codes: validation
problems (DomainError and friends) exit 1, infeasible starts exit 2,
failed iterations exit 3.
"""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class NoSignChangeError(ValueError):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterationsError(RuntimeError):
    """Iteration budget exhausted before the tolerance was met."""


class PositivityError(ValueError):
    """A profile that must stay positive failed to do so."""


class BoundaryConditionError(ValueError):
    """Clamped boundary values or slopes violated beyond tolerance."""


class SideViolationError(ValueError):
    """Candidate crosses the obstacle on the wrong side."""


class InfeasibleStartError(RuntimeError):
    """No feasible starting profile could be constructed."""


class NonConvergenceError(RuntimeError):
    """Minimization terminated without meeting its tolerances."""


class UnimodalityError(RuntimeError):
    """A profile assumed unimodal showed more than one interior extremum."""


class GluingResidualError(RuntimeError):
    """Piecewise construction failed its C1 matching check."""
