"""Cubic Hermite discretization used by the constrained minimizer.

Uniform elements on [a, b], DOF pairs (value, slope) at each node, so
trial functions are C1 with square-integrable second derivatives.  The
class handles the clamped-boundary and mirror-symmetry reductions as a
single affine map  full = T z + f0  from the free parameter vector z,
exposes per-quadrature-point evaluation plus its adjoint (for analytic
gradients), and assembles the bending-plus-mass matrix whose Cholesky
factor preconditions the quasi-Newton inner solves; without it the
fourth-order stiffness (condition growing like n^4) stalls first-order
updates.
"""

from __future__ import annotations

import numpy as np

from .elastica import RealCurve, _vectorized
from .errors import DomainError
from .specialfn import _gauss_nodes

_QPTS = 5


def _reference_basis(h: float, xi: np.ndarray):
    """Hermite shape functions on [0,1] and x-derivatives, slope DOFs in
    physical units (hence the h factors)."""
    one = np.ones_like(xi)
    val = np.stack([
        1.0 - 3.0 * xi**2 + 2.0 * xi**3,
        h * (xi - 2.0 * xi**2 + xi**3),
        3.0 * xi**2 - 2.0 * xi**3,
        h * (-xi**2 + xi**3),
    ])
    dxi = np.stack([
        -6.0 * xi + 6.0 * xi**2,
        h * (1.0 - 4.0 * xi + 3.0 * xi**2),
        6.0 * xi - 6.0 * xi**2,
        h * (-2.0 * xi + 3.0 * xi**2),
    ])
    ddxi = np.stack([
        -6.0 * one + 12.0 * xi,
        h * (-4.0 + 6.0 * xi),
        6.0 * one - 12.0 * xi,
        h * (-2.0 + 6.0 * xi),
    ])
    return val, dxi / h, ddxi / (h * h)


class HermiteSpace:
    """Clamped (optionally mirror-symmetric) Hermite space on [a, b]."""

    def __init__(self, a: float, b: float, n: int, *, symmetric: bool = False,
                 bc: tuple[float, float, float, float] = (0.0, 0.0, 0.0, 0.0)):
        if n < 4:
            raise DomainError("need at least four elements")
        if symmetric and n % 2:
            raise DomainError("mirror symmetry needs an even element count")
        if not b > a:
            raise DomainError("interval needs b > a")
        self.a, self.b, self.n = float(a), float(b), int(n)
        self.symmetric = bool(symmetric)
        self.h = (b - a) / n
        self.nodes = np.linspace(a, b, n + 1)
        self.nfull = 2 * (n + 1)

        xg, wg = _gauss_nodes(_QPTS)
        xi = 0.5 * (xg + 1.0)
        self.qw_ref = 0.5 * wg * self.h
        self.bval, self.bder, self.bsec = _reference_basis(self.h, xi)
        self.xq = (self.nodes[:-1, None] + self.h * xi[None, :]).ravel()
        self.wq = np.tile(self.qw_ref, n)

        # element DOF gather indices: (n, 4)
        base = 2 * np.arange(n)
        self.gather = np.stack([base, base + 1, base + 2, base + 3], axis=1)

        self._build_reduction(bc)

    # -- reduction -----------------------------------------------------

    def _build_reduction(self, bc) -> None:
        n = self.n
        f0 = np.zeros(self.nfull)
        f0[0], f0[1] = bc[0], bc[1]
        f0[2 * n], f0[2 * n + 1] = bc[2], bc[3]

        cols: list[np.ndarray] = []
        if not self.symmetric:
            self.free_value_nodes = list(range(1, n))
            for i in range(1, n):
                col = np.zeros(self.nfull)
                col[2 * i] = 1.0
                cols.append(col)
            for i in range(1, n):
                col = np.zeros(self.nfull)
                col[2 * i + 1] = 1.0
                cols.append(col)
        else:
            half = n // 2
            self.free_value_nodes = list(range(1, half + 1))
            for i in range(1, half + 1):
                col = np.zeros(self.nfull)
                col[2 * i] = 1.0
                if i != half:
                    col[2 * (n - i)] = 1.0
                cols.append(col)
            for i in range(1, half):
                col = np.zeros(self.nfull)
                col[2 * i + 1] = 1.0
                col[2 * (n - i) + 1] = -1.0
                cols.append(col)
        self.T = np.stack(cols, axis=1)
        self.f0 = f0
        self.nfree = self.T.shape[1]

    def full_dofs(self, z: np.ndarray) -> np.ndarray:
        return self.T @ z + self.f0

    def reduce_gradient(self, grad_full: np.ndarray) -> np.ndarray:
        return self.T.T @ grad_full

    def project(self, fn, dfn) -> np.ndarray:
        """Free parameters matching nodal values/slopes of a callable.

        Only meaningful when the callable already respects the boundary
        data and, in symmetric mode, the mirror symmetry.
        """
        vals = np.asarray(fn(self.nodes), dtype=float)
        ders = np.asarray(dfn(self.nodes), dtype=float)
        if self.symmetric:
            half = self.n // 2
            zv = vals[1:half + 1]
            zd = ders[1:half]
            return np.concatenate([zv, zd])
        return np.concatenate([vals[1:-1], ders[1:-1]])

    # -- evaluation ----------------------------------------------------

    def elem_dofs(self, f_full: np.ndarray) -> np.ndarray:
        return f_full[self.gather]

    def at_quadrature(self, f_full: np.ndarray):
        ed = self.elem_dofs(f_full)  # (n, 4)
        u = (ed @ self.bval).ravel()
        du = (ed @ self.bder).ravel()
        d2u = (ed @ self.bsec).ravel()
        return u, du, d2u

    def scatter(self, cv: np.ndarray | None, cd: np.ndarray | None,
                cs: np.ndarray | None) -> np.ndarray:
        """Adjoint of at_quadrature: sum_q c_q * basis_q into DOF space.

        cv/cd/cs are per-quadrature-point coefficients against the
        value/derivative/second-derivative channels (already including
        quadrature weights); any may be None.
        """
        contrib = np.zeros((self.n, 4))
        for c, basis in ((cv, self.bval), (cd, self.bder), (cs, self.bsec)):
            if c is not None:
                contrib += c.reshape(self.n, _QPTS) @ basis.T
        grad = np.zeros(self.nfull)
        np.add.at(grad, self.gather, contrib)
        return grad

    def evaluate(self, f_full: np.ndarray, x) -> tuple:
        """(u, u', u'') at arbitrary points (vectorized)."""
        xa = np.atleast_1d(np.asarray(x, dtype=float))
        idx = np.clip(((xa - self.a) / self.h).astype(int), 0, self.n - 1)
        xi = (xa - self.nodes[idx]) / self.h
        val, der, sec = _reference_basis(self.h, xi)  # (4, npts)
        ed = self.elem_dofs(f_full)[idx]              # (npts, 4)
        u = np.einsum("pk,kp->p", ed, val)
        du = np.einsum("pk,kp->p", ed, der)
        d2u = np.einsum("pk,kp->p", ed, sec)
        return u, du, d2u

    def as_curve(self, f_full: np.ndarray, smoothness: str = "C1") -> RealCurve:
        f_full = np.array(f_full, dtype=float)

        def make(slot):
            def arr(x):
                return self.evaluate(f_full, x)[slot]
            return _vectorized(arr)

        return RealCurve(self.a, self.b, make(0), make(1), make(2),
                         smoothness=smoothness,
                         breakpoints=tuple(self.nodes[1:-1]))

    # -- operators -----------------------------------------------------

    def constraint_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Rows evaluating u at every quadrature point, reduced space.

        Returns (B, b0) with u(xq) = B z + b0.
        """
        nq = self.n * _QPTS
        Bfull = np.zeros((nq, self.nfull))
        for e in range(self.n):
            rows = slice(e * _QPTS, (e + 1) * _QPTS)
            Bfull[rows, self.gather[e]] = self.bval.T
        B = Bfull @ self.T
        b0 = Bfull @ self.f0
        return B, b0

    def stiffness(self, mass_scale: float = 1.0) -> np.ndarray:
        """Reduced bending + scaled-mass matrix, SPD on the free DOFs."""
        K = np.zeros((self.nfull, self.nfull))
        wb = self.bsec * self.qw_ref[None, :]
        wv = self.bval * self.qw_ref[None, :]
        ke = wb @ self.bsec.T + mass_scale * (wv @ self.bval.T)
        for e in range(self.n):
            idx = self.gather[e]
            K[np.ix_(idx, idx)] += ke
        return self.T.T @ K @ self.T
