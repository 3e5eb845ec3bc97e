"""Radial grids resolving the spike interface, weighted quadrature, mass ratio.

Everything lives on the radial coordinate ``r = |x|`` in ``[0, 1]``.  The
interval ``(-1, 1)`` is treated as its half ``[0, 1]`` with even symmetry, so
full-interval integrals pick up a factor of 2 (the "surface area" of the unit
0-sphere).

A :class:`GridFunction` stores left limits at the nodes in ``values`` and,
optionally, right limits in ``right``.  The two differ only at nodes where the
sampled field jumps (the spike edge ``r = eps`` for the resource), which keeps
quadrature of piecewise-smooth fields second order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateResource, InvalidParameter

MIN_NODES = 64
_STRETCH = 0.5  # clustering strength of the in-spike map, in [0, 1)


@dataclass(frozen=True)
class Domain:
    """Either the interval (-1, 1) (``n == 1``) or the unit ball in R^n."""

    kind: str
    n: int
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in ("interval", "ball"):
            raise InvalidParameter(f"unknown domain kind {self.kind!r}")
        if self.kind == "interval" and self.n != 1:
            raise InvalidParameter("an interval domain has n = 1")
        if self.kind == "ball" and self.n < 2:
            raise InvalidParameter("ball domains need n >= 2")
        if self.radius != 1.0:
            raise InvalidParameter("only the unit radius is supported")

    @classmethod
    def interval(cls) -> "Domain":
        return cls("interval", 1)

    @classmethod
    def ball(cls, n: int) -> "Domain":
        return cls("ball", int(n))

    @classmethod
    def for_dimension(cls, n: int) -> "Domain":
        return cls.interval() if n == 1 else cls.ball(n)


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Grid:
    """Nodes ``0 = r_0 < ... < r_N = 1`` with ``r_j = eps`` exactly."""

    domain: Domain
    nodes: np.ndarray
    interface_index: int
    eps: float
    N: int
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def size(self) -> int:
        return self.nodes.shape[0]

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def spacing(self) -> np.ndarray:
        return np.diff(self.nodes)

    def panel_weights(self, n: int):
        """Product-rule weights of each panel for the measure ``r**(n-1) dr``.

        Returns ``(w_left, w_right)``: the integrals of the two linear hat
        pieces on ``[r_i, r_{i+1}]`` against ``r**(n-1)``.
        """
        key = ("panel", n)
        if key not in self._cache:
            a = self.nodes[:-1]
            h = np.diff(self.nodes)
            wl = np.zeros_like(h)
            wr = np.zeros_like(h)
            # binomial expansion in (a, h): all terms positive, no cancellation
            for k in range(n):
                c = math.comb(n - 1, k) * a ** (n - 1 - k) * h ** (k + 1)
                wl += c / ((k + 1) * (k + 2))
                wr += c / (k + 2)
            self._cache[key] = (_readonly(wl), _readonly(wr))
        return self._cache[key]

    def __eq__(self, other):
        if not isinstance(other, Grid):
            return NotImplemented
        return (self.domain == other.domain and self.eps == other.eps
                and self.interface_index == other.interface_index
                and np.array_equal(self.nodes, other.nodes))

    def __hash__(self):
        return hash((self.domain, self.eps, self.N, self.nodes.tobytes()))


def shell_integral(a, h, n):
    """``int_a^{a+h} r**(n-1) dr`` evaluated without cancellation."""
    a = np.asarray(a, dtype=float)
    h = np.asarray(h, dtype=float)
    total = np.zeros(np.broadcast(a, h).shape)
    for k in range(n):
        total = total + math.comb(n - 1, k) * a ** (n - 1 - k) * h ** (k + 1) / (k + 1)
    return total


def make_grid(domain: Domain, N: int, eps: float) -> Grid:
    """Build a deterministic radial grid of ``N`` panels with ``eps`` as a node.

    A quarter of the panels (at least 16) go inside the spike ``[0, eps]``,
    mapped by ``s - a sin(2 pi s) / (2 pi)`` so nodes cluster towards both
    ``r = 0`` and ``r = eps``.  The rest are geometric on ``[eps, 1]``, which
    resolves both the boundary layer just outside the spike and the
    logarithmic tails of the 2D problems.  Grids built with ``N`` and ``2N``
    are nested when ``N`` is a multiple of 4.
    """
    if not (isinstance(eps, (int, float, np.floating)) and 0.0 < eps < 1.0):
        raise InvalidParameter(f"eps must lie in (0, 1), got {eps!r}")
    if int(N) != N or N < MIN_NODES:
        raise InvalidParameter(f"N must be an integer >= {MIN_NODES}, got {N!r}")
    N = int(N)
    eps = float(eps)
    n_in = max(16, N // 4)
    n_out = N - n_in
    s = np.arange(n_in + 1) / n_in
    inner = eps * (s - _STRETCH * np.sin(2.0 * np.pi * s) / (2.0 * np.pi))
    inner[-1] = eps
    t = np.arange(1, n_out + 1) / n_out
    outer = np.exp((1.0 - t) * math.log(eps))
    outer[-1] = 1.0
    nodes = np.concatenate([inner, outer])
    if not np.all(np.diff(nodes) > 0):
        raise InvalidParameter("grid construction produced non-increasing nodes")
    return Grid(domain=domain, nodes=_readonly(nodes), interface_index=n_in,
                eps=eps, N=N)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Samples of a radial field; ``right`` holds right limits where they differ."""

    grid: Grid
    values: np.ndarray
    right: np.ndarray | None = None

    def __post_init__(self):
        v = _readonly(self.values)
        if v.shape != (self.grid.size,):
            raise InvalidParameter(
                f"expected {self.grid.size} values, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise InvalidParameter("grid function values must be finite")
        object.__setattr__(self, "values", v)
        if self.right is not None:
            r = _readonly(self.right)
            if r.shape != v.shape or not np.all(np.isfinite(r)):
                raise InvalidParameter("right limits must match values and be finite")
            object.__setattr__(self, "right", None if np.array_equal(r, v) else r)

    @property
    def right_limits(self) -> np.ndarray:
        return self.values if self.right is None else self.right

    @classmethod
    def constant(cls, grid: Grid, c: float) -> "GridFunction":
        return cls(grid, np.full(grid.size, float(c)))

    @classmethod
    def from_callable(cls, grid: Grid, f) -> "GridFunction":
        return cls(grid, f(np.asarray(grid.nodes)))

    def __mul__(self, alpha):
        r = None if self.right is None else alpha * self.right
        return GridFunction(self.grid, alpha * self.values, r)

    __rmul__ = __mul__

    def max(self) -> float:
        return float(max(self.values.max(), self.right_limits.max()))


def piecewise_constant(grid: Grid, breakpoints, levels) -> GridFunction:
    """Piecewise-constant field with jumps snapped to the nearest grid nodes.

    ``levels[k]`` holds on the k-th piece of ``[0, 1]`` cut at ``breakpoints``
    (increasing, inside ``(0, 1)``).  Returns the field and stores the snapped
    jump positions as nodes where ``values`` (left) and ``right`` differ.
    """
    levels = [float(v) for v in levels]
    breakpoints = list(breakpoints)
    if len(levels) != len(breakpoints) + 1:
        raise InvalidParameter("need exactly one more level than breakpoints")
    r = np.asarray(grid.nodes)
    idx = [int(np.argmin(np.abs(r - b))) for b in breakpoints]
    idx = [min(max(i, 1), grid.size - 2) for i in idx]
    if any(j <= i for i, j in zip(idx, idx[1:])):
        raise InvalidParameter("breakpoints collapse onto the same node")
    left = np.empty(grid.size)
    right = np.empty(grid.size)
    bounds = [0] + idx + [grid.size - 1]
    for k, level in enumerate(levels):
        lo, hi = bounds[k], bounds[k + 1]
        left[lo + 1:hi + 1] = level
        right[lo:hi] = level
    left[0] = levels[0]
    right[-1] = levels[-1]
    return GridFunction(grid, left, right)


def sphere_area(n: int) -> float:
    """Surface area of the unit (n-1)-sphere; 2 for n = 1."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def ball_volume(n: int) -> float:
    return sphere_area(n) / n


def integrate_weighted(f: GridFunction, n: int) -> float:
    """``A_n * int_0^1 f(r) r**(n-1) dr`` by the composite product trapezoid rule.

    The piecewise-linear interpolant of ``f`` (using right limits at the left
    end of each panel) is integrated exactly against ``r**(n-1)``.  For
    ``n == 1`` this is the full-interval integral ``2 * int_0^1 f``.
    """
    if n < 1:
        raise InvalidParameter("dimension must be >= 1")
    wl, wr = f.grid.panel_weights(n)
    total = np.dot(wl, f.right_limits[:-1]) + np.dot(wr, f.values[1:])
    return sphere_area(n) * float(total)


def l1_ratio(u: GridFunction, m: GridFunction, n: int, tol: float = 1e-300) -> float:
    """Mass ratio ``||u||_1 / ||m||_1``."""
    if u.grid != m.grid:
        raise InvalidParameter("u and m must live on the same grid")
    mass = integrate_weighted(m, n)
    if not mass > tol:
        raise DegenerateResource(f"resource mass {mass!r} is not positive")
    return integrate_weighted(u, n) / mass
