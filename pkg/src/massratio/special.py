"""Bessel functions J0, J1 of real argument and their positive zeros.

Double-precision evaluation uses the ascending series up to ``z = 12`` and the
optimally truncated Hankel expansion above.  An independent extended-precision
series (``decimal``, 60 digits) serves as the reference for self-tests.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _backend
from .errors import InvalidParameter

Z_MAX = 50.0
DEFAULT_TABLE_SIZE = 8
_SCAN_STEP = 0.05
_SCAN_END = 32.0


def _check(z):
    z = float(z)
    if not (0.0 <= z <= Z_MAX):
        raise InvalidParameter(f"Bessel argument must lie in [0, {Z_MAX}], got {z!r}")
    return z


def _apply(z, which):
    if np.ndim(z) == 0:
        return _backend.bessel_j01(_check(z))[which]
    z = np.asarray(z, dtype=float)
    out = np.empty(z.shape)
    for idx, val in np.ndenumerate(z):
        out[idx] = _backend.bessel_j01(_check(val))[which]
    return out


def bessel_j0(z):
    """J0(z) for ``0 <= z <= 50`` (scalar or array)."""
    return _apply(z, 0)


def bessel_j1(z):
    """J1(z) for ``0 <= z <= 50`` (scalar or array)."""
    return _apply(z, 1)


def reference_j01(z, digits: int = 60):
    """Reference (J0, J1) from the power series summed in ``digits``-digit decimal."""
    with decimal.localcontext() as ctx:
        ctx.prec = digits
        x = decimal.Decimal(float(z))
        q = -(x * x) / 4
        t0 = s0 = decimal.Decimal(1)
        t1 = s1 = decimal.Decimal(1)
        tiny = decimal.Decimal(10) ** (-digits + 5)
        k = 0
        while True:
            k += 1
            t0 = t0 * q / (k * k)
            t1 = t1 * q / (k * (k + 1))
            s0 += t0
            s1 += t1
            if k > 10 and abs(t0) < tiny and abs(t1) < tiny:
                break
        return float(s0), float(s1 * x / 2)


def _bisect(f, a, b, xtol=1e-13):
    fa = f(a)
    fb = f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0) == (fb > 0):
        raise InvalidParameter("bracket does not straddle a sign change")
    while b - a > xtol:
        c = 0.5 * (a + b)
        if c <= a or c >= b:
            break
        fc = f(c)
        if fc == 0.0:
            return c
        if (fc > 0) == (fa > 0):
            a, fa = c, fc
        else:
            b = c
    return 0.5 * (a + b)


def _zeros(f, count):
    out = []
    a = _SCAN_STEP
    fa = f(a)
    while len(out) < count and a < _SCAN_END:
        b = a + _SCAN_STEP
        fb = f(b)
        if (fa > 0) != (fb > 0):
            out.append(_bisect(f, a, b))
        a, fa = b, fb
    if len(out) < count:
        raise InvalidParameter(f"fewer than {count} zeros below {_SCAN_END}")
    return tuple(out)


@dataclass(frozen=True)
class BesselZeroTable:
    """First ``K`` positive zeros of J0 and J1 (``z_{1,0} = 0`` is implicit)."""

    j0_zeros: tuple
    j1_zeros: tuple

    @property
    def K(self) -> int:
        return len(self.j0_zeros)

    def interlaced(self) -> list:
        """``[0, z01, z11, z02, z12, ...]``."""
        seq = [0.0]
        for a, b in zip(self.j0_zeros, self.j1_zeros):
            seq += [a, b]
        return seq


@lru_cache(maxsize=None)
def zero_table(K: int = DEFAULT_TABLE_SIZE) -> BesselZeroTable:
    return BesselZeroTable(_zeros(bessel_j0, K), _zeros(bessel_j1, K))


def bessel_zero(family: str, k: int, K: int = DEFAULT_TABLE_SIZE) -> float:
    """k-th positive zero (``k >= 1``) of ``J0`` or ``J1``."""
    family = str(family).upper()
    if family not in ("J0", "J1"):
        raise InvalidParameter(f"family must be J0 or J1, got {family!r}")
    if not (1 <= int(k) <= K):
        raise InvalidParameter(f"zero index must lie in [1, {K}], got {k!r}")
    table = zero_table(K)
    zeros = table.j0_zeros if family == "J0" else table.j1_zeros
    return zeros[int(k) - 1]


def selftest(points: int = 1001, zeros: int = 2) -> dict:
    """Compare the double-precision evaluators with the decimal reference.

    Returns the maximal absolute errors of J0/J1 on ``points`` equispaced
    arguments in ``[0, 50]`` and of the first ``zeros`` zeros of each family
    against bisection on the reference series.
    """
    zs = np.linspace(0.0, Z_MAX, points)
    err0 = err1 = 0.0
    for z in zs:
        r0, r1 = reference_j01(z)
        a0, a1 = _backend.bessel_j01(float(z))
        err0 = max(err0, abs(a0 - r0))
        err1 = max(err1, abs(a1 - r1))
    zero_err = 0.0
    for which, family in ((0, "J0"), (1, "J1")):
        ref = _zeros(lambda z: reference_j01(z, 40)[which], zeros)
        for k, zr in enumerate(ref, start=1):
            zero_err = max(zero_err, abs(bessel_zero(family, k) - zr))
    return {"j0_max_error": err0, "j1_max_error": err1,
            "zero_max_error": zero_err, "backend": _backend.BACKEND}
