"""Principal eigenvalue of ``Delta phi + lambda m_eps phi = 0`` (Dirichlet at r = 1).

Four routes are provided: the transcendental equation of the 1D spike, the
Bessel equation of the 2D spike, the Rayleigh-quotient upper bound in any
dimension, and a finite-volume generalized eigensolver used as a
cross-check for the other three.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._discrete import RadialOperator
from .errors import InvalidParameter, NumericalFailure
from .grid import Grid, GridFunction
from .special import bessel_j0, bessel_j1, bessel_zero

TRANSCENDENTAL_1D = "Transcendental1D"
BESSEL_2D = "Bessel2D"
DISCRETE = "Discrete"

BALL2_EPS_MAX = math.exp(-2.0)


@dataclass(frozen=True)
class SpikeProfile:
    """Resource ``1/eps**n`` on the closed ball of radius ``eps``, 0 outside."""

    n: int
    eps: float

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter("dimension must be >= 1")
        if not (0.0 < self.eps < 1.0):
            raise InvalidParameter(f"eps must lie in (0, 1), got {self.eps!r}")

    @property
    def amplitude(self) -> float:
        return self.eps ** (-self.n)


@dataclass(frozen=True)
class EigenResult:
    lambda1: float
    eigenfunction: GridFunction
    method: str
    residual: float
    iterations: int = 0


def sample_spike(profile: SpikeProfile, grid: Grid) -> GridFunction:
    """Sample ``m_eps``; the interface node carries the spike value on its left."""
    if grid.eps != profile.eps:
        raise InvalidParameter(
            f"grid interface {grid.eps!r} does not match spike radius {profile.eps!r}")
    j = grid.interface_index
    values = np.zeros(grid.size)
    values[:j + 1] = profile.amplitude
    right = values.copy()
    right[j] = 0.0
    return GridFunction(grid, values, right)


def _bisect(f, a, b, rtol=1e-15, maxiter=400):
    fa, fb = f(a), f(b)
    if not (np.sign(fa) * np.sign(fb) < 0):
        raise NumericalFailure(f"no sign change on [{a!r}, {b!r}]")
    for _ in range(maxiter):
        c = 0.5 * (a + b)
        if c <= a or c >= b or (b - a) <= rtol * abs(c):
            break
        fc = f(c)
        if fc == 0.0:
            return c
        if np.sign(fc) == np.sign(fa):
            a, fa = c, fc
        else:
            b = c
    return 0.5 * (a + b)


def interval_theta(eps: float, k: int = 1) -> float:
    """Root of ``theta tan(theta) = eps/(1-eps)`` on ``((k-1) pi, (k-1/2) pi)``."""
    if not (0.0 < eps < 1.0):
        raise InvalidParameter(f"eps must lie in (0, 1), got {eps!r}")
    if int(k) != k or k < 1:
        raise InvalidParameter(f"branch index must be a positive integer, got {k!r}")
    c = eps / (1.0 - eps)
    lo = (k - 1) * math.pi
    hi = (k - 0.5) * math.pi
    # sin/cos form has no poles; shrink by a few ulps so the ends keep their signs
    lo = math.nextafter(lo, hi) if k == 1 else lo * (1.0 + 4e-16)
    hi = hi * (1.0 - 4e-16)
    return _bisect(lambda t: t * math.sin(t) - c * math.cos(t), lo, hi)


def lambda_k_interval(eps: float, k: int = 1) -> float:
    """k-th Dirichlet eigenvalue on (-1, 1) with even eigenfunction, spike resource.

    Solves ``tan(sqrt(lambda eps)) = sqrt(eps/lambda) / (1 - eps)`` on the k-th
    branch ``(k-1)^2 pi^2/eps < lambda < (k-1/2)^2 pi^2/eps``.
    """
    theta = interval_theta(eps, k)
    return theta * theta / eps


def eigenpair_interval(eps: float, grid: Grid) -> EigenResult:
    """Principal eigenpair of the 1D spike in closed form, sampled on ``grid``."""
    theta = interval_theta(eps, 1)
    lam = theta * theta / eps
    r = np.asarray(grid.nodes)
    phi = np.where(r <= eps, np.cos(theta * r / eps),
                   math.cos(theta) * (1.0 - r) / (1.0 - eps))
    residual = abs(theta * math.tan(theta) - eps / (1.0 - eps))
    return EigenResult(lam, GridFunction(grid, phi), TRANSCENDENTAL_1D, residual)


def _ball2_root(eps):
    if not (0.0 < eps <= BALL2_EPS_MAX):
        raise InvalidParameter(f"eps must lie in (0, e^-2], got {eps!r}")
    L = abs(math.log(eps))
    z01 = bessel_zero("J0", 1)

    def h(z):
        return bessel_j0(z) - z * bessel_j1(z) * L

    return _bisect(h, 1e-300, z01), L


def lambda1_ball2(eps: float) -> float:
    """Principal eigenvalue of the 2D spike from ``J0(z) = z J1(z) |log eps|``.

    The smallest root ``z*`` lies in ``(0, z_{0,1})`` where
    ``J0(z)/(z J1(z))`` decreases monotonically; ``lambda_1 = z*^2``.
    """
    z, _ = _ball2_root(eps)
    return z * z


def eigenpair_ball2(eps: float, grid: Grid) -> EigenResult:
    """Principal eigenpair of the 2D spike: ``J0`` inside, ``log r`` outside."""
    z, L = _ball2_root(eps)
    r = np.asarray(grid.nodes)
    phi = np.empty_like(r)
    inside = r <= eps
    phi[inside] = bessel_j0(z * r[inside] / eps)
    outside = ~inside
    phi[outside] = bessel_j0(z) * np.log(r[outside]) / math.log(eps)
    phi /= phi.max()
    residual = abs(bessel_j0(z) - z * bessel_j1(z) * L)
    return EigenResult(z * z, GridFunction(grid, phi), BESSEL_2D, residual)


def lambda1_variational_bound(n: int, eps: float) -> float:
    """Rayleigh quotient of ``(eps - |x|)^+``: ``(n+1)(n+2)/2 * eps**(n-2)``."""
    if n < 2:
        raise InvalidParameter("the variational bound is stated for n >= 2")
    if not (0.0 < eps < 1.0):
        raise InvalidParameter(f"eps must lie in (0, 1), got {eps!r}")
    return 0.5 * (n + 1) * (n + 2) * eps ** (n - 2)


def reciprocal_lambda1_lower_bound(n: int, eps: float) -> float:
    """``1/lambda_1 >= 2 / ((n+1)(n+2) eps**(n-2))``."""
    return 1.0 / lambda1_variational_bound(n, eps)


def lambda1_discrete(m: GridFunction, grid: Grid, n: int, tol: float = 1e-10,
                     maxiter: int = 10_000) -> EigenResult:
    """Smallest eigenvalue of ``A phi = lambda M phi`` by inverse power iteration.

    ``A`` is the finite-volume stiffness (Dirichlet at ``r = 1``, symmetry at
    ``r = 0``) and ``M`` the lumped, possibly singular, resource mass.
    Iterates ``x <- A^{-1} M x`` and stops when successive Rayleigh quotients
    agree to ``tol`` relative.
    """
    if m.grid != grid:
        raise InvalidParameter("resource and grid do not match")
    if np.any(m.values < 0) or np.any(m.right_limits < 0):
        raise InvalidParameter("resource must be non-negative")
    op = RadialOperator(grid, n)
    mass = op.cell_mass(m)[:-1]
    if not np.any(mass > 0):
        raise InvalidParameter("resource vanishes identically")
    lower, diag, upper = op.stiffness("dirichlet")
    x = np.ones_like(mass)
    lam_old = math.inf
    for it in range(1, maxiter + 1):
        y = op.solve(lower, diag, upper, mass * x)
        y /= np.max(np.abs(y))
        lam = float(np.dot(y, op.apply_stiffness(y, "dirichlet")) / np.dot(y, mass * y))
        x = y
        if abs(lam - lam_old) <= tol * abs(lam):
            break
        lam_old = lam
    else:
        raise NumericalFailure(f"inverse power iteration did not converge in {maxiter} steps")
    if x[0] < 0:
        x = -x
    defect = op.apply_stiffness(x, "dirichlet") - lam * mass * x
    residual = float(np.max(np.abs(defect)) / np.max(np.abs(lam * mass * x)))
    phi = GridFunction(grid, op.extend(x, "dirichlet"))
    return EigenResult(lam, phi, DISCRETE, residual, it)


def rayleigh_quotient(phi: GridFunction, dphi: GridFunction, m: GridFunction, n: int) -> float:
    """``int |phi'|^2 r^(n-1) / int m phi^2 r^(n-1)`` by weighted quadrature."""
    from .grid import integrate_weighted

    sq = GridFunction(phi.grid, dphi.values ** 2, dphi.right_limits ** 2)
    weighted = GridFunction(phi.grid, m.values * phi.values ** 2,
                            m.right_limits * phi.values ** 2)
    return integrate_weighted(sq, n) / integrate_weighted(weighted, n)
