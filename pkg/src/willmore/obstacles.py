"""Constructive obstacles and admissibility certificates.

The revolution constructions glue circular arcs (zero Willmore density
after the spherical cap normalization) to catenoid pieces (zero mean
curvature) with C1 contact, so their energies collapse to closed forms
4 pi tanh(.): a catenoid bridged between two boundary circles for
alpha at or above the threshold alpha0, a five-piece variant with a
central circle for small alpha, and pushed-down graphs built from the
odd elastica extension for large alpha.  Each construction returns the
profile curve together with its parameters and energy, and
check_admissibility turns a candidate profile into an inf-below-
threshold certificate for the matching obstacle problem.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .bounds import max_g_alpha
from .elastica import RealCurve, _vectorized, hat_obstacle, odd_extension
from .energy import willmore_1d, willmore_revolution
from .errors import DomainError, GluingResidualError, SideViolationError
from .specialfn import QuadratureRule, RootBracket, c0, find_root, scan_roots

__all__ = [
    "RevolutionProfile",
    "ObstacleSpec",
    "AdmissibilityReport",
    "Alpha0Report",
    "alpha0",
    "catenoid_circle_profiles",
    "small_alpha_profile",
    "pushed_down_profile",
    "pushed_down_admissible",
    "check_admissibility",
    "shifted_hat_obstacle",
    "cone_obstacle",
    "enlarged_profile_obstacle",
]

_GLUE_TOL = 1e-8


def _piecewise_curve(pieces, smoothness="C1"):
    """Assemble a RealCurve from [(lo, hi, u, du, d2u), ...] pieces.

    Pieces must abut; evaluation picks the piece by searchsorted so
    interior seam points land on the right-hand piece (values agree at
    seams anyway for the C1 constructions here).
    """
    edges = np.array([p[0] for p in pieces] + [pieces[-1][1]])

    def make(slot):
        def arr(x: np.ndarray) -> np.ndarray:
            idx = np.clip(np.searchsorted(edges, x, side="right") - 1,
                          0, len(pieces) - 1)
            out = np.empty_like(x)
            for k, piece in enumerate(pieces):
                m = idx == k
                if np.any(m):
                    out[m] = piece[2 + slot](x[m])
            return out
        return _vectorized(arr)

    return RealCurve(float(edges[0]), float(edges[-1]),
                     make(0), make(1), make(2), smoothness=smoothness,
                     breakpoints=tuple(float(e) for e in edges[1:-1]))


def _circle_piece(center: float, radius: float):
    # graph of a circle centered at (center, 0); valid where it is one
    def u(x):
        return np.sqrt(radius * radius - (x - center) ** 2)

    def du(x):
        return (center - x) / u(x)

    def d2u(x):
        return -radius * radius / u(x) ** 3

    return u, du, d2u


@dataclass(frozen=True)
class RevolutionProfile:
    """A constructed revolution profile on [-1, 1] with boundary height
    alpha and clamped slopes, plus its energy bookkeeping.

    closed_form_energy is the exact glued-arcs value (tanh closed form)
    for the catenoid kinds and None for pushed-down, whose
    energy_bound field carries the pi alpha c^2 + pi/(alpha-2) cap
    instead.
    """

    kind: str
    alpha: float
    curve: RealCurve
    parameters: dict
    closed_form_energy: float | None = None
    energy_bound: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("catenoid-circle", "small-alpha", "pushed-down"):
            raise DomainError(f"unknown profile kind {self.kind!r}")
        for xe in (-1.0, 1.0):
            if abs(float(self.curve.u(xe)) - self.alpha) > 1e-9:
                raise DomainError(
                    f"profile must reach alpha at x = {xe}; got "
                    f"{float(self.curve.u(xe))}")
            if abs(float(self.curve.du(xe))) > 1e-9:
                raise DomainError(f"profile slope at x = {xe} not clamped")


@dataclass(frozen=True)
class Alpha0Report:
    """The catenoid-existence threshold with its defining quantities."""

    b0: float      # root of b tanh(b) = 1
    ratio: float   # cosh(b0)/b0, about 1.508879561
    alpha0: float  # sqrt(1 - 1/(1 + ratio^2)), about 0.8335565596


@functools.cache
def alpha0() -> Alpha0Report:
    """Threshold below which the bridged catenoid-circle gluing fails."""
    b0 = find_root(lambda b: b * math.tanh(b) - 1.0,
                   RootBracket(0.1, 10.0, tolerance=1e-15))
    ratio = math.cosh(b0) / b0
    return Alpha0Report(b0=b0, ratio=ratio,
                        alpha0=math.sqrt(1.0 - 1.0 / (1.0 + ratio * ratio)))


def _bridged_equation(b: float, alpha: float) -> float:
    ab = alpha * b
    if ab < 1.0:
        return math.nan
    arg = b - math.sqrt(ab * ab - ab)
    if abs(arg) > 700.0:  # cosh overflow; the equation is hugely positive there
        return 1e308
    return math.cosh(arg) - math.sqrt(ab)


def catenoid_circle_profiles(alpha: float,
                             scan_subdivisions: int = 4096,
                             b_max: float = 1e4) -> list[RevolutionProfile]:
    """All bridged catenoid-circle profiles for boundary height alpha.

    Scans b on a log grid over [1/alpha, b_max] for roots of
    cosh(b - sqrt((alpha b)^2 - alpha b)) = sqrt(alpha b), keeps those
    whose contact abscissa x_b = 1 - sqrt(alpha^2 - alpha/b) lies in
    (0, 1) (the equation is even in its cosh argument, so it also has
    spurious roots with x_b < 0), and verifies the C1 gluing.  One
    valid root is expected for alpha >= 1, two for alpha in
    (alpha0, 1); ordering is ascending in b.  Requires
    alpha >= alpha0 - 1e-12.
    """
    a0 = alpha0().alpha0
    if alpha < a0 - 1e-12:
        raise DomainError(
            f"catenoid-circle gluing needs alpha >= alpha0 = {a0}; got {alpha}")

    lo = math.log(1.0 / alpha + 1e-12)
    hi = math.log(b_max)
    roots = scan_roots(lambda t: _bridged_equation(math.exp(t), alpha),
                       lo, hi, scan_subdivisions, tolerance=1e-14)
    profiles = []
    for t in roots:
        b = math.exp(t)
        inner = alpha * alpha - alpha / b
        if inner < 0.0:
            continue
        x_b = 1.0 - math.sqrt(inner)
        if not 0.0 < x_b < 1.0:
            continue
        gamma = math.sqrt(alpha * alpha - (1.0 - x_b) ** 2)
        resid_val = math.cosh(b * x_b) / b - gamma
        resid_slope = math.sinh(b * x_b) - (1.0 - x_b) / gamma
        if max(abs(resid_val), abs(resid_slope)) > _GLUE_TOL:
            raise GluingResidualError(
                f"catenoid-circle gluing residuals ({resid_val}, {resid_slope}) "
                f"exceed {_GLUE_TOL} at alpha = {alpha}, b = {b}")
        cl, cdl, cddl = _circle_piece(-1.0, alpha)
        cr, cdr, cddr = _circle_piece(1.0, alpha)
        curve = _piecewise_curve([
            (-1.0, -x_b, cl, cdl, cddl),
            (-x_b, x_b,
             lambda x, b=b: np.cosh(b * x) / b,
             lambda x, b=b: np.sinh(b * x),
             lambda x, b=b: b * np.cosh(b * x)),
            (x_b, 1.0, cr, cdr, cddr),
        ])
        profiles.append(RevolutionProfile(
            kind="catenoid-circle", alpha=alpha, curve=curve,
            parameters={"b": b, "x_b": x_b, "gamma": gamma,
                        "waist": 1.0 / b},
            closed_form_energy=4.0 * math.pi * math.tanh(b * x_b)))
    profiles.sort(key=lambda p: p.parameters["b"])
    return profiles


def small_alpha_profile(alpha: float, x_b: float) -> RevolutionProfile:
    """Five-piece gluing for alpha below alpha0.

    Boundary circles on [x_b, 1] and its mirror, catenoid pieces
    cosh(b (|x| - x0))/b, and a central circle of radius r through the
    waist.  The boundary contact point x_b is a free parameter in
    (1 - alpha, 1); gamma, b, x0 follow in closed form and the central
    contact x_min solves b x = cosh(b (x0 - x)) sinh(b (x0 - x)) by
    bisection (the left side increases, the right side strictly
    decreases, so the root is unique).
    """
    a0 = alpha0().alpha0
    if not 0.0 < alpha < a0:
        raise DomainError(
            f"small-alpha gluing needs alpha in (0, alpha0 = {a0}); got {alpha}")
    if not 1.0 - alpha < x_b < 1.0:
        raise DomainError(
            f"contact x_b must lie in (1 - alpha, 1); got {x_b}")

    gamma = math.sqrt(alpha * alpha - (1.0 - x_b) ** 2)
    beta = (1.0 - x_b) / gamma
    b = math.sqrt(1.0 + beta * beta) / gamma
    x0 = x_b - math.asinh(beta) / b
    if x0 <= 0.0:
        raise DomainError(
            f"catenoid shift x0 = {x0} not positive; pick x_b closer to 1")

    x_min = find_root(
        lambda x: math.cosh(b * (x0 - x)) * math.sinh(b * (x0 - x)) - b * x,
        RootBracket(0.0, x0, tolerance=1e-15))
    r = math.sqrt(x_min * x_min + math.cosh(b * (x0 - x_min)) ** 2 / (b * b))

    # C1 residuals at both contact circles
    resid = (
        math.cosh(b * (x_b - x0)) / b - gamma,
        math.sinh(b * (x_b - x0)) - beta,
        math.cosh(b * (x0 - x_min)) / b - math.sqrt(r * r - x_min * x_min),
        math.sinh(b * (x0 - x_min)) - x_min / math.sqrt(r * r - x_min * x_min),
    )
    if max(abs(v) for v in resid) > _GLUE_TOL:
        raise GluingResidualError(
            f"small-alpha gluing residuals {resid} exceed {_GLUE_TOL}")

    cl, cdl, cddl = _circle_piece(-1.0, alpha)
    cc, cdc, cddc = _circle_piece(0.0, r)
    cr, cdr, cddr = _circle_piece(1.0, alpha)
    curve = _piecewise_curve([
        (-1.0, -x_b, cl, cdl, cddl),
        (-x_b, -x_min,
         lambda x: np.cosh(b * (-x - x0)) / b,
         lambda x: -np.sinh(b * (-x - x0)),
         lambda x: b * np.cosh(b * (-x - x0))),
        (-x_min, x_min, cc, cdc, cddc),
        (x_min, x_b,
         lambda x: np.cosh(b * (x - x0)) / b,
         lambda x: np.sinh(b * (x - x0)),
         lambda x: b * np.cosh(b * (x - x0))),
        (x_b, 1.0, cr, cdr, cddr),
    ])
    energy = 4.0 * math.pi * (math.tanh(b * (x_b - x0))
                              + math.tanh(b * (x0 - x_min)))
    return RevolutionProfile(
        kind="small-alpha", alpha=alpha, curve=curve,
        parameters={"b": b, "gamma": gamma, "beta": beta, "x_b": x_b,
                    "x0": x0, "x_min": x_min, "r": r},
        closed_form_energy=energy)


def pushed_down_profile(alpha: float, c: float) -> RevolutionProfile:
    """Boundary height alpha minus the odd elastica extension.

    u(x) = alpha - U_c(x + 1/2) + U_c(-1/2) on [-1, 1]; stays within
    [alpha - 4/c0, alpha], so alpha > 2 keeps it positive with room for
    the energy cap pi alpha c^2 + pi/(alpha - 2).
    """
    if not alpha > 2.0:
        raise DomainError(f"pushed-down profile needs alpha > 2; got {alpha}")
    if not 0.0 < c < c0():
        raise DomainError(f"pushed-down profile needs c in (0, c0); got {c}")
    ext = odd_extension(c)
    shift = float(ext.u(-0.5))

    u = _vectorized(lambda x: alpha - ext.u(x + 0.5) + shift)
    du = _vectorized(lambda x: -np.asarray(ext.du(x + 0.5), dtype=float))
    d2u = _vectorized(lambda x: -np.asarray(ext.d2u(x + 0.5), dtype=float))
    curve = RealCurve(-1.0, 1.0, u, du, d2u, smoothness="C1",
                      breakpoints=(-0.5, 0.5))
    bound = math.pi * alpha * c * c + math.pi / (alpha - 2.0)
    return RevolutionProfile(kind="pushed-down", alpha=alpha, curve=curve,
                             parameters={"c": c}, closed_form_energy=None,
                             energy_bound=bound)


def pushed_down_admissible(alpha: float, c: float) -> bool:
    """Whether alpha c^2 + 1/(alpha - 2) <= max_S (alpha - S) G(S)^2,
    the slope-gap condition under which the pushed-down obstacle is
    admissible.  Requires alpha > 2.
    """
    if not alpha > 2.0:
        raise DomainError("admissibility condition needs alpha > 2")
    report = max_g_alpha(alpha)
    return alpha * c * c + 1.0 / (alpha - 2.0) <= report.max_value


# ---------------------------------------------------------------------------
# obstacle specifications and certificates

@dataclass(frozen=True)
class ObstacleSpec:
    """An obstacle curve plus which side admissible graphs must keep.

    side "above": clamped graphs on [0, 1] staying above the curve;
    the curve must be negative at both ends.  side "below": positive
    revolution profiles on [-1, 1] staying below; with `alpha` set the
    curve must clear alpha at both ends.  `clearance` records an
    interval length near the ends on which the constraint cannot bind.
    """

    side: str
    curve: RealCurve
    clearance: float = 0.0
    alpha: float | None = None

    def __post_init__(self) -> None:
        if self.side not in ("above", "below"):
            raise DomainError(f"side must be 'above' or 'below'; got {self.side!r}")
        ua = float(self.curve.u(self.curve.a))
        ub = float(self.curve.u(self.curve.b))
        if self.side == "above":
            if not (ua < 0.0 and ub < 0.0):
                raise DomainError(
                    f"an above-obstacle must be negative at the ends; got "
                    f"({ua}, {ub})")
        elif self.alpha is not None:
            if not (ua > self.alpha and ub > self.alpha):
                raise DomainError(
                    f"a below-obstacle must clear alpha = {self.alpha} at the "
                    f"ends; got ({ua}, {ub})")
        if self.clearance < 0.0:
            raise DomainError("clearance cannot be negative")


def shifted_hat_obstacle(c: float, eps: float = 1e-3) -> ObstacleSpec:
    """The hat comparison curve lowered by eps: the standard admissible
    above-obstacle with witness energy 4 c^2."""
    if not eps > 0.0:
        raise DomainError("shift eps must be positive")
    hat = hat_obstacle(c)

    u = _vectorized(lambda x: np.asarray(hat.u(x), dtype=float) - eps)
    curve = RealCurve(0.0, 1.0, u, hat.du, hat.d2u, smoothness="C1",
                      breakpoints=hat.breakpoints)
    crossings = scan_roots(lambda x: float(u(x)), 0.0, 0.5, 512,
                           tolerance=1e-12)
    clearance = crossings[0] if crossings else 0.5
    return ObstacleSpec(side="above", curve=curve, clearance=clearance)


def cone_obstacle(height: float, slope: float = 8.0, floor: float = -0.1,
                  tip_radius: float = 0.02) -> ObstacleSpec:
    """Symmetric cone peaking at `height` over x = 1/2: a tent with
    fixed flank slope, a small parabolic tip cap, and a constant
    negative floor.

    The cap keeps the peak value exactly `height` while letting
    quadrature-point sampling of the tip agree across grids, so the
    minimal energy is grid-stable.  Slope, floor, and cap are shared
    across heights, making the family pointwise nested in the peak and
    the constrained minimal energies monotone by construction.
    """
    if not height > 0.0:
        raise DomainError("cone needs positive height")
    if not floor < 0.0:
        raise DomainError("cone floor must be negative")
    if not 0.0 < tip_radius < 0.25:
        raise DomainError("tip radius must lie in (0, 0.25)")
    depth = (height - floor) / slope
    if depth > 0.5 * tip_radius:
        d_clip = depth + 0.5 * tip_radius
    else:
        d_clip = math.sqrt(2.0 * tip_radius * depth)
    if not d_clip < 0.5:
        raise DomainError("cone flanks must reach the floor inside [0, 1]; "
                          "increase the slope")

    def ramp(d):
        # Huber profile: parabolic within the cap, linear on the flanks
        return np.where(d <= tip_radius, d * d / (2.0 * tip_radius),
                        d - 0.5 * tip_radius)

    def dramp(d):
        return np.where(d <= tip_radius, d / tip_radius, 1.0)

    def val(x):
        return np.maximum(height - slope * ramp(np.abs(x - 0.5)), floor)

    def der(x):
        d = np.abs(x - 0.5)
        raw = height - slope * ramp(d)
        g = -slope * dramp(d) * np.sign(x - 0.5)
        return np.where(raw > floor, g, 0.0)

    def dder(x):
        d = np.abs(x - 0.5)
        raw = height - slope * ramp(d)
        return np.where((raw > floor) & (d < tip_radius),
                        -slope / tip_radius, 0.0)

    cut = min(tip_radius, d_clip)
    curve = RealCurve(0.0, 1.0, _vectorized(val), _vectorized(der),
                      _vectorized(dder), smoothness="C0",
                      breakpoints=(0.5 - d_clip, 0.5 - cut, 0.5 + cut,
                                   0.5 + d_clip))
    return ObstacleSpec(side="above", curve=curve, clearance=0.5 - d_clip)


def enlarged_profile_obstacle(profile: RevolutionProfile,
                              delta: float = 1e-3) -> ObstacleSpec:
    """Below-obstacle from a constructed profile, raised by a quadratic
    ramp near the ends so the strict clearance condition at x = +-1
    holds while the profile itself stays an admissible witness."""
    if not delta > 0.0:
        raise DomainError("enlargement delta must be positive")
    base = profile.curve
    x_c = profile.parameters.get("x_b", 0.5)
    width = 1.0 - x_c

    def ramp(x):
        t = (np.abs(x) - x_c) / width
        return np.where(t > 0.0, t * t, 0.0)

    def dramp(x):
        t = (np.abs(x) - x_c) / width
        return np.where(t > 0.0, 2.0 * t * np.sign(x) / width, 0.0)

    def d2ramp(x):
        t = (np.abs(x) - x_c) / width
        return np.where(t > 0.0, 2.0 / (width * width), 0.0)

    u = _vectorized(lambda x: np.asarray(base.u(x), dtype=float)
                    + delta * ramp(np.asarray(x, dtype=float)))
    du = _vectorized(lambda x: np.asarray(base.du(x), dtype=float)
                     + delta * dramp(np.asarray(x, dtype=float)))
    d2u = _vectorized(lambda x: np.asarray(base.d2u(x), dtype=float)
                      + delta * d2ramp(np.asarray(x, dtype=float)))
    breaks = tuple(sorted({*base.breakpoints, -x_c, x_c}))
    curve = RealCurve(-1.0, 1.0, u, du, d2u, smoothness="C1",
                      breakpoints=breaks)
    return ObstacleSpec(side="below", curve=curve, clearance=width,
                        alpha=profile.alpha)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Certificate that a feasible candidate puts the infimum below the
    existence thresholds it lists as certified."""

    side: str
    energy: float
    worst_gap: float      # min of the side-signed candidate-obstacle gap
    worst_x: float
    thresholds: dict
    certified: tuple[str, ...]


def check_admissibility(spec: ObstacleSpec, candidate: RealCurve,
                        alpha: float | None = None,
                        rule: QuadratureRule = QuadratureRule()
                        ) -> AdmissibilityReport:
    """Energy certificate for an obstacle from one feasible candidate.

    The candidate must respect spec.side against the obstacle on a
    dense grid (SideViolationError otherwise, reporting the worst
    point).  Its energy, 1D or revolution according to the side, is
    then compared against the existence thresholds: 4 c0^2 (symmetric)
    and c0^2 (general) above, 4 pi and pi max_S (alpha - S) G(S)^2
    below.  Certified names are those with energy strictly under the
    threshold.
    """
    xs = np.linspace(candidate.a, candidate.b, 2001)
    extra = sorted({*spec.curve.breakpoints, *candidate.breakpoints})
    if extra:
        xs = np.unique(np.concatenate([xs, np.asarray(extra)]))
    cand = np.asarray(candidate.u(xs), dtype=float)
    obs = np.asarray(spec.curve.u(xs), dtype=float)
    gap = cand - obs if spec.side == "above" else obs - cand
    i = int(np.argmin(gap))
    if gap[i] < -1e-10:
        raise SideViolationError(
            f"candidate crosses the obstacle at x = {xs[i]} by {-gap[i]}")

    if spec.side == "above":
        energy = willmore_1d(candidate, rule)
        thresholds = {"dirichlet-symmetric": 4.0 * c0() ** 2,
                      "dirichlet-general": c0() ** 2}
    else:
        a = alpha if alpha is not None else spec.alpha
        if a is None:
            raise DomainError("below-side admissibility needs alpha")
        energy = willmore_revolution(candidate, rule).total
        thresholds = {"revolution": 4.0 * math.pi,
                      "slope-gap": math.pi * max_g_alpha(a).max_value}

    certified = tuple(name for name, thr in thresholds.items() if energy < thr)
    return AdmissibilityReport(side=spec.side, energy=energy,
                               worst_gap=float(gap[i]), worst_x=float(xs[i]),
                               thresholds=thresholds, certified=certified)
