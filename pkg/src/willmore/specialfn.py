"""Scalar special functions and numeric primitives.

Everything downstream leans on the odd increasing function

    G(t) = integral_0^t (1 + tau^2)^(-5/4) dtau,

whose range is the open interval (-c0/2, c0/2) with
c0 = B(1/2, 3/4) = sqrt(pi) Gamma(3/4) / Gamma(5/4).  The module also
provides the quadrature and root-finding plumbing shared by the energy,
bound and obstacle modules.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, MaxIterationsError, NoSignChangeError

__all__ = [
    "QuadratureRule",
    "RootBracket",
    "c0",
    "g_profile",
    "g_inverse",
    "find_root",
    "scan_roots",
]


# ---------------------------------------------------------------------------
# quadrature

def _adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                      tol: float, max_depth: int = 50) -> float:
    """Adaptive Simpson with Richardson acceleration.

    The usual recursion: a panel is accepted when the two-half estimate
    agrees with the single-panel estimate to 15*tol, and the Richardson
    correction (S2 - S1)/15 is folded in.
    """
    fa, fb = f(a), f(b)
    m = 0.5 * (a + b)
    fm = f(m)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def rec(a, fa, m, fm, b, fb, whole, tol, depth):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        if depth >= max_depth or abs(left + right - whole) <= 15.0 * tol:
            return left + right + (left + right - whole) / 15.0
        return (rec(a, fa, lm, flm, m, fm, left, 0.5 * tol, depth + 1)
                + rec(m, fm, rm, frm, b, fb, right, 0.5 * tol, depth + 1))

    return rec(a, fa, m, fm, b, fb, whole, tol, 0)


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss_nodes(npts: int) -> tuple[np.ndarray, np.ndarray]:
    got = _GAUSS_CACHE.get(npts)
    if got is None:
        got = np.polynomial.legendre.leggauss(npts)
        _GAUSS_CACHE[npts] = got
    return got


@dataclass(frozen=True)
class QuadratureRule:
    """Integration rule used by the energy functionals.

    kind "gauss" is a composite Gauss-Legendre rule (`panels` panels of
    `points` nodes each, panels aligned with any supplied breakpoints);
    kind "simpson" is adaptive Simpson driven by `tol`.
    """

    kind: str = "gauss"
    panels: int = 256
    points: int = 5
    tol: float = 1e-12

    def __post_init__(self) -> None:
        if self.kind not in ("gauss", "simpson"):
            raise DomainError(f"unknown quadrature kind {self.kind!r}")
        if self.panels < 1:
            raise DomainError("panel count must be positive")
        if self.points < 2:
            raise DomainError("need at least two Gauss points per panel")
        if not (self.tol > 0.0):
            raise DomainError("tolerance must be positive")

    def _edges(self, a: float, b: float,
               breakpoints: Sequence[float]) -> list[tuple[float, float]]:
        cuts = sorted({a, b, *(x for x in breakpoints if a < x < b)})
        return list(zip(cuts[:-1], cuts[1:]))

    def integrate(self, f: Callable, a: float, b: float,
                  breakpoints: Sequence[float] = ()) -> float:
        """Integrate f over [a, b], never straddling a breakpoint.

        For the Gauss kind f must accept an ndarray of abscissae; panels
        are split over the seam-bounded subintervals proportionally to
        length (at least one panel each).
        """
        if not (b > a):
            raise DomainError("integration interval must have b > a")
        pieces = self._edges(a, b, breakpoints)
        if self.kind == "simpson":
            return math.fsum(
                _adaptive_simpson(f, lo, hi, self.tol * (hi - lo) / (b - a))
                for lo, hi in pieces)

        xg, wg = _gauss_nodes(self.points)
        total = b - a
        parts = []
        for lo, hi in pieces:
            n = max(1, round(self.panels * (hi - lo) / total))
            edges = np.linspace(lo, hi, n + 1)
            mid = 0.5 * (edges[:-1] + edges[1:])
            half = 0.5 * (edges[1] - edges[0])
            xs = (mid[:, None] + half * xg[None, :]).ravel()
            vals = np.asarray(f(xs), dtype=float)
            parts.append(float(np.sum(vals.reshape(n, -1) * (half * wg), axis=None)))
        return math.fsum(parts)


# ---------------------------------------------------------------------------
# root finding

@dataclass(frozen=True)
class RootBracket:
    """Sign-changing bracket handed to find_root."""

    lo: float
    hi: float
    max_iterations: int = 200
    tolerance: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.hi > self.lo):
            raise DomainError("bracket needs hi > lo")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be positive")
        if not (self.tolerance > 0.0):
            raise DomainError("tolerance must be positive")


def find_root(f: Callable[[float], float], bracket: RootBracket) -> float:
    """Brent's method on a sign-changing bracket.

    Deterministic: identical inputs give identical outputs.  Raises
    NoSignChangeError when f(lo) and f(hi) share a sign and
    MaxIterationsError when the iteration budget runs out.
    """
    flo, fhi = f(bracket.lo), f(bracket.hi)
    if flo == 0.0:
        return bracket.lo
    if fhi == 0.0:
        return bracket.hi
    if (flo > 0.0) == (fhi > 0.0):
        raise NoSignChangeError(
            f"f({bracket.lo}) = {flo} and f({bracket.hi}) = {fhi} share a sign")
    try:
        return float(brentq(f, bracket.lo, bracket.hi,
                            xtol=bracket.tolerance, rtol=4.0 * np.finfo(float).eps,
                            maxiter=bracket.max_iterations))
    except RuntimeError as exc:  # scipy's failed-to-converge signal
        raise MaxIterationsError(str(exc)) from exc


def scan_roots(f: Callable[[float], float], lo: float, hi: float,
               subdivisions: int = 1024, *, max_iterations: int = 200,
               tolerance: float = 1e-12) -> list[float]:
    """All sign-change roots of f on [lo, hi], ascending.

    Uniform sampling at subdivisions+1 points, each sign change refined
    with find_root.  Tangential roots (no sign change) are not
    guaranteed to be found; NaN samples are skipped.
    """
    if not (hi > lo):
        raise DomainError("scan interval must have hi > lo")
    if subdivisions < 1:
        raise DomainError("need at least one subdivision")
    xs = np.linspace(lo, hi, subdivisions + 1)
    vals = np.array([f(float(x)) for x in xs], dtype=float)
    roots: list[float] = []
    for i in range(subdivisions):
        a, b = float(xs[i]), float(xs[i + 1])
        fa, fb = vals[i], vals[i + 1]
        if math.isnan(fa) or math.isnan(fb):
            continue
        if fa == 0.0:
            if not roots or abs(roots[-1] - a) > tolerance:
                roots.append(a)
            continue
        if (fa < 0.0 < fb) or (fb < 0.0 < fa):
            r = find_root(f, RootBracket(a, b, max_iterations, tolerance))
            if not roots or abs(roots[-1] - r) > tolerance:
                roots.append(r)
    if vals[-1] == 0.0 and (not roots or abs(roots[-1] - float(xs[-1])) > tolerance):
        roots.append(float(xs[-1]))
    return roots


# ---------------------------------------------------------------------------
# the slope integral G and its inverse

@functools.cache
def c0() -> float:
    """The Beta(1/2, 3/4) constant bounding 2*G; about 2.396280469."""
    return math.sqrt(math.pi) * math.gamma(0.75) / math.gamma(1.25)


def _g_integrand(t: float) -> float:
    return (1.0 + t * t) ** -1.25


_TAIL_SPLIT = 50.0


def _g_tail(t: float, tol: float = 1e-13) -> float:
    # integral_t^inf (1+tau^2)^(-5/4) dtau, rewritten with tau = 1/w^2 so the
    # integrand 2 w^2 (1 + w^4)^(-5/4) is smooth through w = 0
    w = 1.0 / math.sqrt(t)
    return _adaptive_simpson(lambda s: 2.0 * s * s * (1.0 + s ** 4) ** -1.25,
                             0.0, w, tol)


def g_profile(t: float) -> float:
    """G(t) by adaptive Simpson; odd, strictly increasing, |G| < c0/2.

    Beyond |t| = 50 the complementary tail is integrated instead (after
    the substitution tau = 1/s) to keep the far digits: the integrand
    decays like tau^(-5/2) and direct panels out there lose precision.
    """
    t = float(t)
    if math.isnan(t):
        raise DomainError("g_profile needs a finite argument")
    if t == 0.0:
        return 0.0
    sign = -1.0 if t < 0.0 else 1.0
    t = abs(t)
    if math.isinf(t):
        return sign * 0.5 * c0()
    if t <= _TAIL_SPLIT:
        return sign * _adaptive_simpson(_g_integrand, 0.0, t, 1e-12)
    return sign * (0.5 * c0() - _g_tail(t))


def g_inverse(y: float) -> float:
    """Inverse of G on (-c0/2, c0/2): safeguarded Newton.

    Closed-form derivative G'(t) = (1+t^2)^(-5/4); falls back to
    bisection steps whenever Newton leaves the current bracket.  Raises
    DomainError for |y| >= c0/2.
    """
    y = float(y)
    half = 0.5 * c0()
    if not abs(y) < half:
        raise DomainError(f"g_inverse needs |y| < c0/2 = {half}; got {y}")
    if y == 0.0:
        return 0.0
    sign = -1.0 if y < 0.0 else 1.0
    y = abs(y)

    # bracket [lo, hi] with G(lo) < y < G(hi); the asymptotic tail
    # c0/2 - G(t) ~ (2/3) t^(-3/2) seeds both the bracket and Newton
    gap = half - y
    t = min(y / max(1.0 - y * y, 1e-3), (2.0 / (3.0 * gap)) ** (2.0 / 3.0) + 1.0)
    lo, hi = 0.0, t
    while g_profile(hi) < y:
        lo = hi
        hi *= 2.0
        if hi > 1e12:
            raise MaxIterationsError("g_inverse failed to bracket its target")

    for _ in range(100):
        gt = g_profile(t)
        err = gt - y
        if abs(err) <= 1e-14 * max(1.0, y):
            break
        if err > 0.0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        step = err * (1.0 + t * t) ** 1.25
        nxt = t - step
        if not (lo < nxt < hi):
            nxt = 0.5 * (lo + hi)
        if nxt == t:
            break
        t = nxt
    return sign * t


# ---------------------------------------------------------------------------
# vectorized fast path
#
# The elastica evaluators hit G and its inverse at every quadrature point,
# which is far too many scalar adaptive-Simpson calls.  A graded prefix
# table (Gauss-Legendre panels between asinh-spaced knots) gives machine
# accuracy and lets whole arrays be finished with one panel each.  The
# tests pin this path against g_profile/g_inverse on random points.

_FAST_SEGMENTS = 800
_FAST_ORDER = 12


@functools.cache
def _fast_table() -> tuple[np.ndarray, np.ndarray]:
    v = np.linspace(0.0, math.asinh(_TAIL_SPLIT), _FAST_SEGMENTS + 1)
    knots = np.sinh(v)
    xg, wg = _gauss_nodes(_FAST_ORDER)
    mid = 0.5 * (knots[:-1] + knots[1:])
    half = 0.5 * np.diff(knots)
    xs = mid[:, None] + half[:, None] * xg[None, :]
    seg = np.sum((1.0 + xs * xs) ** -1.25 * (half[:, None] * wg[None, :]), axis=1)
    prefix = np.concatenate([[0.0], np.cumsum(seg)])
    return knots, prefix


def _g_batch(t: np.ndarray) -> np.ndarray:
    """Vectorized G for |t| <= 50 plus tail handling beyond."""
    t = np.asarray(t, dtype=float)
    sign = np.sign(t)
    at = np.abs(t)
    out = np.empty_like(at)

    knots, prefix = _fast_table()
    xg, wg = _gauss_nodes(_FAST_ORDER)

    near = at <= _TAIL_SPLIT
    if np.any(near):
        a = at[near]
        j = np.clip(np.searchsorted(knots, a, side="right") - 1, 0, len(knots) - 2)
        lo = knots[j]
        mid = 0.5 * (lo + a)
        half = 0.5 * (a - lo)
        xs = mid[:, None] + half[:, None] * xg[None, :]
        rest = np.sum((1.0 + xs * xs) ** -1.25 * (half[:, None] * wg[None, :]), axis=1)
        out[near] = prefix[j] + rest
    far = ~near
    if np.any(far):
        a = at[far]
        w = 1.0 / np.sqrt(a)
        mid = 0.5 * w
        half = 0.5 * w
        xs = mid[:, None] + half[:, None] * xg[None, :]
        tail = np.sum(2.0 * xs * xs * (1.0 + xs ** 4) ** -1.25
                      * (half[:, None] * wg[None, :]), axis=1)
        out[far] = 0.5 * c0() - tail
    return sign * out


def _g_inverse_batch(y: np.ndarray) -> np.ndarray:
    """Vectorized inverse of G; Newton seeded from the prefix table."""
    y = np.asarray(y, dtype=float)
    half = 0.5 * c0()
    if np.any(np.abs(y) >= half):
        raise DomainError("g_inverse needs |y| < c0/2")
    sign = np.sign(y)
    ay = np.abs(y)

    knots, prefix = _fast_table()
    t = np.interp(ay, prefix, knots)
    deep = ay > prefix[-1]
    if np.any(deep):
        t[deep] = (2.0 / (3.0 * (half - ay[deep]))) ** (2.0 / 3.0)
    for _ in range(60):
        err = _g_batch(t) - ay
        step = err * (1.0 + t * t) ** 1.25
        t = np.maximum(t - step, 0.0)
        if np.all(np.abs(err) <= 1e-14):
            break
    return sign * t
