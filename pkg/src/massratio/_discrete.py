"""Vertex-centred finite-volume discretization of the radial Laplacian.

Node ``i`` owns the cell between the neighbouring panel midpoints; the cell
of ``r_0 = 0`` is ``[0, r_{1/2}]``, so the symmetry condition ``u'(0) = 0`` is
built in.  At the origin the scheme reduces to ``n * u''(0)`` with a mirrored
ghost node.  The last cell is the half cell ``[r_{N-1/2}, 1]``; Dirichlet
problems drop it, Neumann problems keep it with zero outward flux.
"""
import numpy as np

from ._backend import solve_tridiagonal
from .grid import GridFunction, shell_integral


class RadialOperator:
    """Stiffness ``A`` (with ``-Delta_h = V^{-1} A``) and cell volumes ``V``."""

    def __init__(self, grid, n):
        r = np.asarray(grid.nodes)
        h = np.diff(r)
        mid = r[:-1] + 0.5 * h
        self.grid = grid
        self.n = n
        self.kappa = mid ** (n - 1) / h
        size = r.shape[0]
        self.vol_left = np.zeros(size)
        self.vol_right = np.zeros(size)
        self.vol_left[1:] = shell_integral(mid, r[1:] - mid, n)
        self.vol_right[:-1] = shell_integral(r[:-1], mid - r[:-1], n)
        self.volume = self.vol_left + self.vol_right

    def size(self, bc):
        return self.grid.size - 1 if bc == "dirichlet" else self.grid.size

    def stiffness(self, bc):
        """Bands ``(lower, diag, upper)`` of ``A`` restricted to the unknowns."""
        k = self.kappa
        size = self.grid.size
        diag = np.zeros(size)
        diag[:-1] += k
        diag[1:] += k
        lower = np.zeros(size)
        upper = np.zeros(size)
        lower[1:] = -k
        upper[:-1] = -k
        m = self.size(bc)
        return lower[:m].copy(), diag[:m].copy(), upper[:m].copy()

    def apply_stiffness(self, u, bc):
        """``A u`` for ``u`` on the unknowns (Dirichlet value 0 at ``r = 1``)."""
        full = np.zeros(self.grid.size)
        full[:u.shape[0]] = u
        flux = self.kappa * np.diff(full)
        out = np.zeros(self.grid.size)
        out[:-1] -= flux
        out[1:] += flux
        return out[:u.shape[0]]

    def abs_stiffness(self, u, bc):
        """``|A| |u|``: magnitude of the terms summed in ``A u``."""
        full = np.zeros(self.grid.size)
        full[:u.shape[0]] = np.abs(u)
        pair = self.kappa * (full[:-1] + full[1:])
        out = np.zeros(self.grid.size)
        out[:-1] += pair
        out[1:] += pair
        return out[:u.shape[0]]

    def cell_mass(self, f: GridFunction):
        """Integral of ``f r**(n-1)`` over each cell, from one-sided limits."""
        return f.values * self.vol_left + f.right_limits * self.vol_right

    def cell_average(self, f: GridFunction):
        return self.cell_mass(f) / self.volume

    def laplacian(self, u, bc):
        """Pointwise ``Delta_h u`` on the unknowns."""
        return -self.apply_stiffness(u, bc) / self.volume[:u.shape[0]]

    def solve(self, lower, diag, upper, rhs):
        return solve_tridiagonal(lower, diag, upper, rhs)

    def extend(self, u, bc):
        """Append the Dirichlet boundary value so ``u`` covers every node."""
        if bc == "dirichlet":
            return np.append(u, 0.0)
        return np.asarray(u, dtype=float)
