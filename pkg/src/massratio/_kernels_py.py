"""Pure-Python/numpy implementations of the compiled kernels.

Signatures and results match ``_kernels.pyx``; the tridiagonal solve is
delegated to LAPACK through :func:`scipy.linalg.solve_banded`.
"""
import math

import numpy as np
from scipy.linalg import solve_banded

Z_SWITCH = 12.0
MIN_SERIES_TERMS = 30
MAX_SERIES_TERMS = 120


def solve_tridiagonal(lower, diag, upper, rhs):
    """Solve a tridiagonal system.

    ``lower[i]`` multiplies ``x[i-1]`` and ``upper[i]`` multiplies ``x[i+1]``
    in row ``i``; ``lower[0]`` and ``upper[-1]`` are ignored.
    """
    diag = np.asarray(diag, dtype=float)
    n = diag.shape[0]
    ab = np.zeros((3, n))
    ab[0, 1:] = np.asarray(upper, dtype=float)[:-1]
    ab[1] = diag
    ab[2, :-1] = np.asarray(lower, dtype=float)[1:]
    return solve_banded((1, 1), ab, np.asarray(rhs, dtype=float),
                        overwrite_ab=True, check_finite=False)


def _series(z):
    q = -0.25 * z * z
    t0 = s0 = 1.0
    t1 = s1 = 1.0
    for k in range(1, MAX_SERIES_TERMS):
        t0 *= q / (k * k)
        t1 *= q / (k * (k + 1))
        s0 += t0
        s1 += t1
        if k >= MIN_SERIES_TERMS and abs(t0) < 1e-18 and abs(t1) < 1e-18:
            break
    return s0, 0.5 * z * s1


def _hankel(z):
    # optimally truncated large-argument expansion for orders 0 and 1
    out = []
    for mu, shift in ((0.0, 0.25 * math.pi), (4.0, 0.75 * math.pi)):
        p = q = 0.0
        term = 1.0
        prev = math.inf
        for k in range(0, 60):
            if k > 0:
                term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
            a = abs(term)
            if a > prev:
                break
            sign = 1.0 if (k // 2) % 2 == 0 else -1.0
            if k % 2 == 0:
                p += sign * term
            else:
                q += sign * term
            if a < 1e-17:
                break
            prev = a
        chi = z - shift
        out.append(math.sqrt(2.0 / (math.pi * z)) * (p * math.cos(chi) - q * math.sin(chi)))
    return out[0], out[1]


def bessel_j01(z):
    """Return ``(J0(z), J1(z))`` for a scalar ``z >= 0``."""
    z = float(z)
    if z <= Z_SWITCH:
        return _series(z)
    return _hankel(z)
