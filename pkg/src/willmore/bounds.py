"""Universal energy bounds and slope thresholds.

Obstacle heights decide solvability: symmetric clamped graphs exist
below the universal Dirichlet threshold y0/2 = 1.1890464540 (y0 solves
y (c0 - G(y)) = 2 + 2 (1+y^2)^(-1/4)), while the Navier analogue is
2/c0.  Energy caps translate into slope caps through G, both for
graphs (Lemma-style: energy below 4 c1^2 forces |u'| <= Ginv(c1/2))
and for revolution profiles, where an energy W below 4 pi yields
explicit height envelopes K and M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .elastica import RealCurve
from .energy import willmore_revolution
from .errors import DomainError, UnimodalityError
from .specialfn import QuadratureRule, RootBracket, c0, find_root, g_inverse, g_profile

__all__ = [
    "UniversalBoundReport",
    "GAlphaReport",
    "RevolutionEnvelope",
    "SlopeThresholdReport",
    "dirichlet_universal_bound",
    "navier_bound",
    "g_alpha",
    "max_g_alpha",
    "slope_bound_1d",
    "revolution_bounds",
    "slope_threshold_check",
]


@dataclass(frozen=True)
class UniversalBoundReport:
    """Dirichlet obstacle-height threshold with its cross-check."""

    y0: float          # root of y (c0 - G(y)) = 2 + 2 (1+y^2)^(-1/4)
    bound: float       # y0 / 2
    max_value: float   # max over y of (2 + 2 (1+y^2)^(-1/4)) / (c0 - G(y))
    maximizer: float
    cross_check: float  # |max_value / 2 - bound|


def _height_ratio(y: float) -> float:
    return (2.0 + 2.0 * (1.0 + y * y) ** -0.25) / (c0() - g_profile(y))


def dirichlet_universal_bound() -> UniversalBoundReport:
    """Height threshold for the symmetric clamped problem.

    Two independent routes: a root solve for the stationarity equation
    (giving y0) and a direct maximization of the height ratio (whose
    max equals y0, so bound = y0/2); the report carries their gap.
    """
    y0 = find_root(
        lambda y: y * (c0() - g_profile(y)) - 2.0 - 2.0 * (1.0 + y * y) ** -0.25,
        RootBracket(0.5, 50.0, tolerance=1e-14))
    res = minimize_scalar(lambda y: -_height_ratio(y), bounds=(0.1, 100.0),
                          method="bounded", options={"xatol": 1e-10})
    max_value = -float(res.fun)
    return UniversalBoundReport(y0=y0, bound=0.5 * y0, max_value=max_value,
                                maximizer=float(res.x),
                                cross_check=abs(0.5 * max_value - 0.5 * y0))


def navier_bound() -> float:
    """Height threshold 2/c0 for the Navier (hinged) problem."""
    return 2.0 / c0()


def g_alpha(alpha: float, s: float) -> float:
    """The slope-gap product (alpha - s) G(s)^2."""
    if not alpha > 0.0:
        raise DomainError("g_alpha needs alpha > 0")
    if not 0.0 <= s <= alpha:
        raise DomainError(f"g_alpha needs s in [0, alpha]; got {s}")
    g = g_profile(s)
    return (alpha - s) * g * g


@dataclass(frozen=True)
class GAlphaReport:
    """Maximum of s -> (alpha - s) G(s)^2 with the derived threshold."""

    alpha: float
    s_star: float
    max_value: float
    c_threshold: float | None
    """Largest admissible pushed-down parameter sqrt((max - 1/(alpha-2))/alpha);
    None when alpha <= 2 or the radicand is negative."""


def _g_alpha_dsign(alpha: float, s: float) -> float:
    # sign factor of d/ds (alpha - s) G(s)^2 for s > 0:
    # G(s) [2 (alpha - s) G'(s) - G(s)] with G > 0, so only the bracket matters
    return 2.0 * (alpha - s) * (1.0 + s * s) ** -1.25 - g_profile(s)


def max_g_alpha(alpha: float, scan_points: int = 2048) -> GAlphaReport:
    """Maximize (alpha - s) G(s)^2 over s in [0, alpha].

    Unimodality is asserted, not assumed: the derivative's sign pattern
    is scanned and anything other than a single +/- change raises
    UnimodalityError.  The scan root is refined by bisection on the
    derivative and cross-checked against a bounded golden/parabolic
    search on the value itself.
    """
    if not alpha > 0.0:
        raise DomainError("max_g_alpha needs alpha > 0")
    ss = np.linspace(alpha * 1e-9, alpha * (1.0 - 1e-12), scan_points + 1)
    signs = np.sign([_g_alpha_dsign(alpha, float(s)) for s in ss])
    flips = np.nonzero(np.diff(signs) != 0)[0]
    if len(flips) != 1 or signs[0] <= 0 or signs[-1] >= 0:
        raise UnimodalityError(
            f"derivative of g_alpha showed {len(flips)} sign changes at "
            f"alpha = {alpha}; expected exactly one (+ to -)")
    i = int(flips[0])
    s_star = find_root(lambda s: _g_alpha_dsign(alpha, s),
                       RootBracket(float(ss[i]), float(ss[i + 1]),
                                   tolerance=1e-13))
    res = minimize_scalar(lambda s: -g_alpha(alpha, s),
                          bounds=(0.0, alpha), method="bounded",
                          options={"xatol": 1e-8})
    if abs(float(res.x) - s_star) > 1e-5 * max(1.0, alpha):
        raise UnimodalityError(
            f"derivative root {s_star} and direct maximizer {float(res.x)} "
            f"disagree at alpha = {alpha}")
    max_value = g_alpha(alpha, s_star)

    c_thr = None
    if alpha > 2.0:
        radicand = (max_value - 1.0 / (alpha - 2.0)) / alpha
        if radicand > 0.0:
            c_thr = math.sqrt(radicand)
    return GAlphaReport(alpha=alpha, s_star=s_star, max_value=max_value,
                        c_threshold=c_thr)


def slope_bound_1d(energy: float) -> float:
    """Slope cap Ginv(sqrt(energy)/4) for symmetric clamped graphs.

    Valid for 0 <= energy < 4 c0^2 (write energy = 4 c1^2; the cap is
    Ginv(c1/2)).  DomainError outside that range.
    """
    if not 0.0 <= energy < 4.0 * c0() ** 2:
        raise DomainError(
            f"slope_bound_1d needs energy in [0, 4 c0^2); got {energy}")
    if energy == 0.0:
        return 0.0
    return g_inverse(math.sqrt(energy) / 4.0)


@dataclass(frozen=True)
class RevolutionEnvelope:
    """Height control for revolution profiles of energy below 4 pi."""

    energy: float
    slope_cap: float   # K = 1/sqrt((4 pi / W)^2 - 1)
    height_floor: float  # M = K/(exp((2K/pi) sqrt(1+K^2) W) - 1)


def revolution_bounds(energy: float) -> RevolutionEnvelope:
    """K and M envelopes for a revolution profile of energy W < 4 pi."""
    if not 0.0 < energy < 4.0 * math.pi:
        raise DomainError(
            f"revolution_bounds needs energy in (0, 4 pi); got {energy}")
    ratio = 4.0 * math.pi / energy
    K = 1.0 / math.sqrt(ratio * ratio - 1.0)
    growth = (2.0 * K / math.pi) * math.sqrt(1.0 + K * K) * energy
    if growth > 700.0:
        # expm1 overflows; K e^(-growth) matches to a 1 + e^(-growth)
        # factor and underflows to the honest limit 0
        M = K * math.exp(-growth)
    else:
        M = K / math.expm1(growth)
    return RevolutionEnvelope(energy=energy, slope_cap=K, height_floor=M)


@dataclass(frozen=True)
class SlopeThresholdReport:
    """Outcome of the steep-profile energy threshold (revolution)."""

    energy: float
    slope_max: float
    s: float
    threshold: float       # pi (alpha - s) G(s)^2
    hypothesis_holds: bool  # energy <= threshold
    conclusion_holds: bool  # slope_max < s
    consistent: bool        # implication hypothesis => conclusion


def slope_threshold_check(curve: RealCurve, alpha: float, s: float,
                          rule: QuadratureRule = QuadratureRule()
                          ) -> SlopeThresholdReport:
    """Check the implication: revolution energy <= pi (alpha-s) G(s)^2
    forces max |u'| < s.  Vacuously consistent when the energy is above
    the threshold.  Requires s in (0, alpha).
    """
    if not 0.0 < s < alpha:
        raise DomainError(f"slope_threshold_check needs s in (0, alpha); got {s}")
    energy = willmore_revolution(curve, rule).total
    xs = np.linspace(curve.a, curve.b, 4097)
    if curve.breakpoints:
        xs = np.unique(np.concatenate([xs, np.asarray(curve.breakpoints)]))
    slope_max = float(np.max(np.abs(np.asarray(curve.du(xs), dtype=float))))
    threshold = math.pi * g_alpha(alpha, s)
    hyp = energy <= threshold
    concl = slope_max < s
    return SlopeThresholdReport(energy=energy, slope_max=slope_max, s=s,
                                threshold=threshold, hypothesis_holds=hyp,
                                conclusion_holds=concl,
                                consistent=(not hyp) or concl)
