"""Willmore energies for graphs and surfaces of revolution.

Three functionals share the slope factor q = 1 + u'^2:

  * the one-dimensional bending energy  integral u''^2 q^(-5/2),
  * the revolution energy   (pi/2) integral H^2 u sqrt(q)  with
    H = 1/(u sqrt(q)) - u'' q^(-3/2), reported split into bending,
    membrane and boundary parts, and
  * the hyperbolic energy   integral kappa_h^2 sqrt(q)/u  with
    kappa_h = u u'' q^(-3/2) + 1/sqrt(q).

They are linked by  W_[a,b] = (pi/2) Wh_[a,b] - 2 pi [u'/sqrt(q)]_a^b
(bracket: value at b minus value at a), which the tests exercise on
random positive profiles.  First variations come as explicit integrals
so discrete minimizers can be checked for stationarity without
differencing the energy itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .elastica import RealCurve, _vectorized
from .errors import BoundaryConditionError, PositivityError
from .specialfn import QuadratureRule

__all__ = [
    "EnergyBreakdown",
    "willmore_1d",
    "willmore_revolution",
    "willmore_hyperbolic",
    "first_variation_1d",
    "first_variation_hyperbolic",
    "auxiliary_v",
]

_DEFAULT_RULE = QuadratureRule()
_CLAMP_TOL = 1e-10
_SLOPE_TOL = 1e-8  # slopes below this at the ends count as clamped


@dataclass(frozen=True)
class EnergyBreakdown:
    """Revolution energy split.  total = bending + membrane + boundary
    to machine closure; `boundary` is zero when the endpoint slopes are
    clamped (the functional then has no bracket term), while
    `boundary_bracket` always records the raw bracket value
    -pi [u'/sqrt(1+u'^2)] for diagnostics.
    """

    total: float
    bending: float
    membrane: float
    boundary: float
    boundary_bracket: float


def _grid(curve: RealCurve) -> np.ndarray:
    xs = np.linspace(curve.a, curve.b, 2048 + 1)
    if curve.breakpoints:
        xs = np.unique(np.concatenate([xs, np.asarray(curve.breakpoints)]))
    return xs

def _require_positive(curve: RealCurve) -> None:
    xs = _grid(curve)
    vals = np.asarray(curve.u(xs), dtype=float)
    if not np.all(vals > 0.0):
        i = int(np.argmin(vals))
        raise PositivityError(
            f"profile not positive: u({xs[i]}) = {vals[i]}")


def willmore_1d(curve: RealCurve, rule: QuadratureRule = _DEFAULT_RULE) -> float:
    """Bending energy integral u''^2 (1 + u'^2)^(-5/2) over the curve."""

    def f(x):
        d1 = np.asarray(curve.du(x), dtype=float)
        d2 = np.asarray(curve.d2u(x), dtype=float)
        return d2 * d2 * (1.0 + d1 * d1) ** -2.5

    return rule.integrate(f, curve.a, curve.b, curve.breakpoints)


def willmore_revolution(curve: RealCurve,
                        rule: QuadratureRule = _DEFAULT_RULE) -> EnergyBreakdown:
    """Willmore energy of the surface of revolution swept by the curve.

    Requires a positive profile.  The bracket enters the total only when
    an endpoint slope exceeds 1e-8 in magnitude; clamped profiles get
    the plain two-term form.  Either way the reported total equals the
    H^2 surface integral.
    """
    _require_positive(curve)

    def f_bend(x):
        u = np.asarray(curve.u(x), dtype=float)
        d1 = np.asarray(curve.du(x), dtype=float)
        d2 = np.asarray(curve.d2u(x), dtype=float)
        return d2 * d2 * u * (1.0 + d1 * d1) ** -2.5

    def f_memb(x):
        u = np.asarray(curve.u(x), dtype=float)
        d1 = np.asarray(curve.du(x), dtype=float)
        return 1.0 / (u * np.sqrt(1.0 + d1 * d1))

    bending = 0.5 * math.pi * rule.integrate(f_bend, curve.a, curve.b,
                                             curve.breakpoints)
    membrane = 0.5 * math.pi * rule.integrate(f_memb, curve.a, curve.b,
                                              curve.breakpoints)

    da = float(curve.du(curve.a))
    db = float(curve.du(curve.b))
    bracket = -math.pi * (db / math.sqrt(1.0 + db * db)
                          - da / math.sqrt(1.0 + da * da))
    include = max(abs(da), abs(db)) > _SLOPE_TOL
    boundary = bracket if include else 0.0
    return EnergyBreakdown(total=bending + membrane + boundary,
                           bending=bending, membrane=membrane,
                           boundary=boundary, boundary_bracket=bracket)


def willmore_hyperbolic(curve: RealCurve,
                        rule: QuadratureRule = _DEFAULT_RULE) -> float:
    """Hyperbolic Willmore energy integral kappa_h^2 sqrt(1+u'^2)/u."""
    _require_positive(curve)

    def f(x):
        u = np.asarray(curve.u(x), dtype=float)
        d1 = np.asarray(curve.du(x), dtype=float)
        d2 = np.asarray(curve.d2u(x), dtype=float)
        q = 1.0 + d1 * d1
        kh = u * d2 * q ** -1.5 + q ** -0.5
        return kh * kh * np.sqrt(q) / u

    return rule.integrate(f, curve.a, curve.b, curve.breakpoints)


def _require_clamped(phi: RealCurve) -> None:
    vals = (float(phi.u(phi.a)), float(phi.u(phi.b)),
            float(phi.du(phi.a)), float(phi.du(phi.b)))
    if max(abs(v) for v in vals) > _CLAMP_TOL:
        raise BoundaryConditionError(
            f"test function must vanish with its slope at both ends; "
            f"got (u(a), u(b), u'(a), u'(b)) = {vals}")


def _merged_breaks(u: RealCurve, phi: RealCurve) -> tuple[float, ...]:
    return tuple(sorted({*u.breakpoints, *phi.breakpoints}))


def first_variation_1d(u: RealCurve, phi: RealCurve,
                       rule: QuadratureRule = _DEFAULT_RULE) -> float:
    """Gateaux derivative of the 1D energy at u in direction phi.

        W'(u)(phi) = 2 int kappa/(1+u'^2) phi''
                   - 5 int kappa^2 u'/sqrt(1+u'^2) phi'

    with kappa = u'' (1+u'^2)^(-3/2).  phi must be clamped at both ends
    (within 1e-10), else BoundaryConditionError.
    """
    _require_clamped(phi)

    def f(x):
        d1 = np.asarray(u.du(x), dtype=float)
        d2 = np.asarray(u.d2u(x), dtype=float)
        q = 1.0 + d1 * d1
        kap = d2 * q ** -1.5
        p1 = np.asarray(phi.du(x), dtype=float)
        p2 = np.asarray(phi.d2u(x), dtype=float)
        return 2.0 * kap / q * p2 - 5.0 * kap * kap * d1 / np.sqrt(q) * p1

    return rule.integrate(f, u.a, u.b, _merged_breaks(u, phi))


def first_variation_hyperbolic(u: RealCurve, phi: RealCurve,
                               rule: QuadratureRule = _DEFAULT_RULE) -> float:
    """Gateaux derivative of the hyperbolic energy at u in direction phi.

    Five terms, with kappa_h = u u'' (1+u'^2)^(-3/2) + (1+u'^2)^(-1/2):

        2 int kappa_h/(1+u'^2) phi''
      + int kappa_h^2 sqrt(1+u'^2)/u^2 phi
      - 5 int kappa_h^2 u'/(u sqrt(1+u'^2)) phi'
      - 2 int kappa_h/u^2 phi
      + 4 int kappa_h u'/(u (1+u'^2)) phi'

    u must be positive and phi clamped at both ends.
    """
    _require_positive(u)
    _require_clamped(phi)

    def f(x):
        U = np.asarray(u.u(x), dtype=float)
        d1 = np.asarray(u.du(x), dtype=float)
        d2 = np.asarray(u.d2u(x), dtype=float)
        q = 1.0 + d1 * d1
        sq = np.sqrt(q)
        kh = U * d2 * q ** -1.5 + 1.0 / sq
        P = np.asarray(phi.u(x), dtype=float)
        p1 = np.asarray(phi.du(x), dtype=float)
        p2 = np.asarray(phi.d2u(x), dtype=float)
        return (2.0 * kh / q * p2
                + kh * kh * sq / (U * U) * P
                - 5.0 * kh * kh * d1 / (U * sq) * p1
                - 2.0 * kh / (U * U) * P
                + 4.0 * kh * d1 / (U * q) * p1)

    return rule.integrate(f, u.a, u.b, _merged_breaks(u, phi))


def auxiliary_v(curve: RealCurve, fd_step: float = 1e-6) -> RealCurve:
    """The auxiliary quantity V = u'' (1 + u'^2)^(-5/4) as a curve.

    Along any elastica solution V is constant; across obstacle contact
    it decreases, which is the structure the minimizer checks probe.
    Derivative evaluators use central differences of V (step clamped to
    the interval near the ends), so the class tag is C0.
    """

    def v_arr(x: np.ndarray) -> np.ndarray:
        d1 = np.asarray(curve.du(x), dtype=float)
        d2 = np.asarray(curve.d2u(x), dtype=float)
        return d2 * (1.0 + d1 * d1) ** -1.25

    def dv_arr(x: np.ndarray) -> np.ndarray:
        lo = np.maximum(x - fd_step, curve.a)
        hi = np.minimum(x + fd_step, curve.b)
        return (v_arr(hi) - v_arr(lo)) / (hi - lo)

    def d2v_arr(x: np.ndarray) -> np.ndarray:
        lo = np.maximum(x - fd_step, curve.a)
        hi = np.minimum(x + fd_step, curve.b)
        return (dv_arr(hi) - dv_arr(lo)) / (hi - lo)

    return RealCurve(curve.a, curve.b, _vectorized(v_arr), _vectorized(dv_arr),
                     _vectorized(d2v_arr), smoothness="C0",
                     breakpoints=curve.breakpoints)
