"""Explicit sub/super-solution families and the admissible-constants region.

For ``n >= 2`` with ``d = c1 / eps**(n-2)``:

* super-solution: the constant ``1/eps**n``;
* sub-solution:   ``c2/eps**n * exp(-(r/eps)**n) - c2/e`` on ``[0, eps]`` and
  ``c2/(e r**n) - c2/e`` on ``(eps, 1]``, which is C^1 across ``r = eps``.

The Neumann ancestor of the sub-solution (same formula without the ``- c2/e``
shift) does not vanish at ``r = 1`` and is not provided.

For ``n = 1`` the sub-solution is built from the Neumann reference ``v``:
``(1 - eps**0.25) (v - v(1))``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import InvalidParameter
from .grid import Grid, GridFunction, sphere_area

E = math.e


@dataclass(frozen=True)
class ConstantsPoint:
    n: int
    c1: float
    c2: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameter("the constants region is defined for n >= 2")
        if not (self.c1 > 0 and self.c2 > 0):
            raise InvalidParameter("c1 and c2 must be positive")


def conditions(p: ConstantsPoint) -> dict:
    """The four defining inequalities, evaluated individually."""
    n, c1, c2 = p.n, p.c1, p.c2
    return {
        "C1": c1 < 2.0 / ((n + 1) * (n + 2)),
        "C2": 1.0 - 2.0 * n * (n - 1) * c1 > E * c2,
        "C3": 2.0 * n * E * c1 - c2 >= 0.0,
        "C4": c2 < 1.0,
    }


def region_contains(p: ConstantsPoint) -> bool:
    """Membership of ``(c1, c2)`` in T_n."""
    return all(conditions(p).values())


def _closure_ok(n, c1, c2, tol=1e-12):
    return (c1 >= -tol and c2 >= -tol
            and c1 <= 2.0 / ((n + 1) * (n + 2)) + tol
            and 1.0 - 2.0 * n * (n - 1) * c1 >= E * c2 - tol
            and 2.0 * n * E * c1 - c2 >= -tol
            and c2 <= 1.0 + tol)


def region_vertices(n: int) -> list:
    """Vertices of T_n, counter-clockwise from the origin.

    The triangle cut out by the C2/C3 lines and ``c2 = 0`` has vertices
    ``(0, 0)``, ``(1/(2n(n-1)), 0)`` and ``(1/(2n(e^2+n-1)), e/(e^2+n-1))``.
    For ``n = 2`` the line ``c1 = 1/6`` clips it into a quadrilateral.
    """
    if n < 2:
        raise InvalidParameter("the constants region is defined for n >= 2")
    apex = (1.0 / (2.0 * n * (E * E + n - 1)), E / (E * E + n - 1))
    right = (1.0 / (2.0 * n * (n - 1)), 0.0)
    cap = 2.0 / ((n + 1) * (n + 2))
    if right[0] <= cap:
        return [(0.0, 0.0), right, apex]
    # clip: c1 = cap meets c2 = 0 and the C2 line 1 - 2n(n-1)c1 = e c2
    on_c2 = (cap, (1.0 - 2.0 * n * (n - 1) * cap) / E)
    return [(0.0, 0.0), (cap, 0.0), on_c2, apex]


@dataclass(frozen=True)
class ExplicitFamily:
    n: int
    eps: float
    c1: float
    c2: float

    def __post_init__(self):
        if not (0.0 < self.eps < 1.0):
            raise InvalidParameter(f"eps must lie in (0, 1), got {self.eps!r}")

    @property
    def d(self) -> float:
        return self.c1 / self.eps ** (self.n - 2)

    @property
    def super_value(self) -> float:
        return self.eps ** (-self.n)

    def sub_inner(self, r):
        """Inner branch (value, first, second derivative) at ``r``."""
        n, eps, c2 = self.n, self.eps, self.c2
        r = np.asarray(r, dtype=float)
        x = (r / eps) ** n
        ex = np.exp(-x)
        val = c2 / eps ** n * ex - c2 / E
        d1 = -c2 * n * r ** (n - 1) / eps ** (2 * n) * ex
        if n >= 2:
            d2 = (c2 * n * (n - 1) * r ** (n - 2) / eps ** (2 * n)
                  * (n * x / (n - 1) - 1.0) * ex)
        else:
            d2 = c2 / eps ** 2 * (x - 1.0) * ex
        return val, d1, d2

    def sub_outer(self, r):
        n, c2 = self.n, self.c2
        r = np.asarray(r, dtype=float)
        val = c2 / (E * r ** n) - c2 / E
        d1 = -c2 * n / (E * r ** (n + 1))
        d2 = c2 * n * (n + 1) / (E * r ** (n + 2))
        return val, d1, d2

    def sub(self, r):
        r = np.asarray(r, dtype=float)
        inside = r <= self.eps
        rin = np.where(inside, r, self.eps)
        rout = np.where(inside, 1.0, r)
        out = np.where(inside, self.sub_inner(rin)[0], self.sub_outer(rout)[0])
        return out if out.ndim else float(out)

    def interface_mismatch(self):
        """(value jump, derivative jump) between the branches at ``r = eps``."""
        vi, di, _ = self.sub_inner(self.eps)
        vo, do, _ = self.sub_outer(self.eps)
        return float(vo - vi), float(do - di)

    def sample_sub(self, grid: Grid) -> GridFunction:
        return GridFunction(grid, self.sub(np.asarray(grid.nodes)))

    def sample_super(self, grid: Grid) -> GridFunction:
        return GridFunction.constant(grid, self.super_value)


class FamilyValues(NamedTuple):
    sub: float
    super: float


def eval_family_nd(fam: ExplicitFamily, r) -> FamilyValues:
    if fam.n < 2:
        raise InvalidParameter("the closed-form family is defined for n >= 2")
    return FamilyValues(fam.sub(r), fam.super_value)


class ResidualReport(NamedTuple):
    min_sub_residual: float
    max_super_residual: float
    sub_residuals: np.ndarray
    super_residuals: np.ndarray
    nodes: np.ndarray


def residual_nd(fam: ExplicitFamily, grid: Grid) -> ResidualReport:
    """Closed-form defects ``d (u'' + (n-1)/r u') + u (m - u)`` at the grid nodes.

    The origin and the spike edge ``r = eps`` are excluded; the sub-solution defect must be >= 0, the super-solution one
    <= 0 (exactly 0 on the spike, ``-1/eps**(2n)`` off it).
    """
    if fam.n < 2:
        raise InvalidParameter("the closed-form family is defined for n >= 2")
    if grid.eps != fam.eps:
        raise InvalidParameter("grid interface does not match the family's eps")
    r = np.asarray(grid.nodes)
    keep = (r > 0) & (r != fam.eps)
    r = r[keep]
    n, d, amp = fam.n, fam.d, fam.super_value
    inside = r < fam.eps
    sub_res = np.empty_like(r)
    sup_res = np.empty_like(r)
    for mask, branch, m in ((inside, fam.sub_inner, amp), (~inside, fam.sub_outer, 0.0)):
        if not np.any(mask):
            continue
        u, u1, u2 = branch(r[mask])
        sub_res[mask] = d * (u2 + (n - 1) / r[mask] * u1) + u * (m - u)
        sup_res[mask] = amp * (m - amp)
    return ResidualReport(float(sub_res.min()), float(sup_res.max()), sub_res, sup_res, r)


def analytic_sub_ratio(n: int, eps: float, c2: float) -> float:
    """``c2 (n/e |log eps| + 1 - 2/e)``: mass ratio of the sub-solution."""
    return c2 * (n / E * abs(math.log(eps)) + 1.0 - 2.0 / E)


def analytic_sub_l1(n: int, eps: float, c2: float) -> float:
    """``||sub||_1 = A_n/n (c2 n/e |log eps| + c2 - 2 c2/e)``."""
    if n < 2:
        raise InvalidParameter("the closed-form family is defined for n >= 2")
    return sphere_area(n) / n * analytic_sub_ratio(n, eps, c2)


def build_sub_1d(v: GridFunction, eps: float) -> GridFunction:
    """``(1 - eps**0.25) (v - v(1))`` from the Neumann reference ``v``."""
    factor = 1.0 - eps ** 0.25
    vals = factor * (v.values - v.values[-1])
    vals[-1] = 0.0
    return GridFunction(v.grid, vals)


def residual_1d(candidate: GridFunction, eps: float, grid: Grid,
                relative: bool = False) -> float:
    """Minimum over interior nodes (spike edge excluded) of the discrete defect
    ``sqrt(eps) U'' + U (m_eps - U)``.

    With ``relative=True`` each defect is divided by the sum of the magnitudes
    of its terms.
    """
    from .bvp import NEUMANN, LogisticProblem, _System
    from .eigen import SpikeProfile, sample_spike

    if candidate.grid != grid:
        raise InvalidParameter("candidate lives on a different grid")
    m = sample_spike(SpikeProfile(1, eps), grid)
    system = _System(LogisticProblem(1, math.sqrt(eps), m, NEUMANN), grid)
    u = np.asarray(candidate.values, dtype=float)
    f = system.defect(u)
    if relative:
        s = system.scale(u)
        f = f / np.where(s > 0, s, 1.0)
    mask = np.ones(grid.size, dtype=bool)
    mask[[0, grid.interface_index, grid.size - 1]] = False
    return float(f[mask].min())
