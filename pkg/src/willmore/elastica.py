"""Closed-form elastica solutions of the clamped one-dimensional problem.

The symmetric solutions form a one-parameter family indexed by
c in (-c0, c0): the slope is u'(x) = Ginv(c/2 - c x), the curvature is
kappa(x) = -c (1 + u'(x)^2)^(-1/4), and the bending energy is exactly
c^2.  Odd reflection across x = 0 and x = 1 extends a solution to
[-1/2, 3/2] with energy 2 c^2; rescaling that extension onto [0, 1]
yields the hat-shaped comparison curves of energy 4 c^2 whose midpoint
heights approach 2/c0 as c approaches c0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError
from .specialfn import _g_batch, _g_inverse_batch, c0, g_inverse

__all__ = [
    "RealCurve",
    "ElasticaSolution",
    "symmetric_solution",
    "odd_extension",
    "hat_obstacle",
]

_SMALL_C = 1e-6


def _vectorized(fn: Callable[[np.ndarray], np.ndarray]) -> Callable:
    """Wrap an array-in/array-out evaluator so scalars work too."""

    def call(x):
        arr = np.asarray(x, dtype=float)
        out = fn(np.atleast_1d(arr))
        return float(out[0]) if arr.ndim == 0 else out

    return call


@dataclass(frozen=True)
class RealCurve:
    """A planar graph x -> u(x) on [a, b] with derivative evaluators.

    Evaluators accept floats or ndarrays.  `breakpoints` lists interior
    seams where smoothness drops; quadrature aligns panels with them.
    `smoothness` is the global class tag ("C0", "C1" or "C2").
    """

    a: float
    b: float
    u: Callable
    du: Callable
    d2u: Callable
    smoothness: str = "C2"
    breakpoints: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not (self.b > self.a):
            raise DomainError("curve interval needs b > a")
        if self.smoothness not in ("C0", "C1", "C2"):
            raise DomainError(f"unknown smoothness tag {self.smoothness!r}")
        for x in self.breakpoints:
            if not (self.a < x < self.b):
                raise DomainError(f"breakpoint {x} outside ({self.a}, {self.b})")


@dataclass(frozen=True)
class ElasticaSolution:
    """A member of the symmetric solution family with its closed forms."""

    c: float
    curve: RealCurve
    energy: float          # exactly c^2
    max_slope: float       # Ginv(|c|/2), attained at the endpoints
    midpoint_value: float  # u(1/2)
    kappa: Callable = field(repr=False)
    """Signed curvature evaluator, kappa(x) = -c (1 + u'^2)^(-1/4)."""


def symmetric_solution(c: float) -> ElasticaSolution:
    """The explicit symmetric clamped elastica with parameter c.

    Requires |c| < c0.  For c = 0 this is the zero function; c > 0 gives
    the positive arch.  Near the small-c limit the 2/c prefactor in the
    height formula cancels catastrophically, so |c| < 1e-6 switches the
    value evaluator to the limiting parabola c x (1 - x) / 2 (relative
    error O(c^2)); slope and curvature keep their exact forms throughout.
    """
    c = float(c)
    if not abs(c) < c0():
        raise DomainError(f"symmetric_solution needs |c| < c0 = {c0()}; got {c}")

    if c == 0.0:
        zero = _vectorized(lambda x: np.zeros_like(x))
        curve = RealCurve(0.0, 1.0, zero, zero, zero, smoothness="C2")
        return ElasticaSolution(0.0, curve, 0.0, 0.0, 0.0, kappa=zero)

    def slope_arr(x: np.ndarray) -> np.ndarray:
        return _g_inverse_batch(c / 2.0 - c * x)

    def d2u_arr(x: np.ndarray) -> np.ndarray:
        t = slope_arr(x)
        return -c * (1.0 + t * t) ** 1.25

    def kappa_arr(x: np.ndarray) -> np.ndarray:
        t = slope_arr(x)
        return -c * (1.0 + t * t) ** -0.25

    t_end = g_inverse(abs(c) / 2.0)
    peak_term = (1.0 + t_end * t_end) ** -0.25

    if abs(c) < _SMALL_C:
        def u_arr(x: np.ndarray) -> np.ndarray:
            return 0.5 * c * x * (1.0 - x)
    else:
        def u_arr(x: np.ndarray) -> np.ndarray:
            t = slope_arr(x)
            return (2.0 / c) * ((1.0 + t * t) ** -0.25 - peak_term)

    curve = RealCurve(0.0, 1.0, _vectorized(u_arr), _vectorized(slope_arr),
                      _vectorized(d2u_arr), smoothness="C2")
    mid = (2.0 / c) * (1.0 - peak_term) if abs(c) >= _SMALL_C else c / 8.0
    return ElasticaSolution(c, curve, c * c, t_end, mid,
                            kappa=_vectorized(kappa_arr))


def odd_extension(c: float) -> RealCurve:
    """Odd reflection of the symmetric solution onto [-1/2, 3/2].

    Branches -u(-x) / u(x) / -u(2-x); C1 at the junctions x = 0 and
    x = 1 where the curvature flips sign, so the class tag is C1.  The
    bending energy over the extended interval is 2 c^2.
    """
    sol = symmetric_solution(c)
    base = sol.curve

    def piecewise(x: np.ndarray, left, mid, right) -> np.ndarray:
        out = np.empty_like(x)
        m_left = x < 0.0
        m_right = x > 1.0
        m_mid = ~(m_left | m_right)
        if np.any(m_left):
            out[m_left] = left(x[m_left])
        if np.any(m_mid):
            out[m_mid] = mid(x[m_mid])
        if np.any(m_right):
            out[m_right] = right(x[m_right])
        return out

    u = _vectorized(lambda x: piecewise(
        x, lambda s: -base.u(-s), base.u, lambda s: -base.u(2.0 - s)))
    du = _vectorized(lambda x: piecewise(
        x, lambda s: base.du(-s), base.du, lambda s: base.du(2.0 - s)))
    d2u = _vectorized(lambda x: piecewise(
        x, lambda s: -base.d2u(-s), base.d2u, lambda s: -base.d2u(2.0 - s)))

    return RealCurve(-0.5, 1.5, u, du, d2u, smoothness="C1",
                     breakpoints=(0.0, 1.0))


def hat_obstacle(c: float) -> RealCurve:
    """The rescaled odd extension: a clamped hat on [0, 1] of energy 4 c^2.

    hat(x) = U(-1/2 + 2x)/2 - U(-1/2)/2 where U is the odd extension.
    Vanishes with zero slope at both ends, is symmetric about 1/2, and
    peaks at hat(1/2) = u_c(1/2); the peak tends to 2/c0 as c -> c0.
    The extremal parameter c = c0 itself is outside the domain (the
    limiting curve has unbounded slope and is no longer a graph of
    finite energy density), matching the strict inequality |c| < c0.
    """
    ext = odd_extension(c)

    def remap(x):
        return -0.5 + 2.0 * np.asarray(x, dtype=float)

    shift = ext.u(-0.5)
    u = _vectorized(lambda x: 0.5 * ext.u(remap(x)) - 0.5 * shift)
    du = _vectorized(lambda x: ext.du(remap(x)))
    d2u = _vectorized(lambda x: 2.0 * ext.d2u(remap(x)))
    return RealCurve(0.0, 1.0, u, du, d2u, smoothness="C1",
                     breakpoints=(0.25, 0.75))
