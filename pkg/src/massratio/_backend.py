"""Kernel backend selection.

The compiled extension is used when importable; set ``MASSRATIO_BACKEND=python``
to force the numpy/scipy fallback.
"""
import importlib
import os

from . import _kernels_py

_requested = os.environ.get("MASSRATIO_BACKEND", "auto").lower()

if _requested == "python":
    kernels = _kernels_py
else:
    try:
        kernels = importlib.import_module("massratio._kernels")
    except ImportError:
        if _requested == "compiled":
            raise
        kernels = _kernels_py

BACKEND = "python" if kernels is _kernels_py else "compiled"


def get_kernels(name=None):
    """Return a kernel module by name (``"compiled"``, ``"python"``) or the active one."""
    if name is None:
        return kernels
    if name == "python":
        return _kernels_py
    if name == "compiled":
        return importlib.import_module("massratio._kernels")
    raise ValueError(f"unknown backend {name!r}")


def solve_tridiagonal(lower, diag, upper, rhs):
    return kernels.solve_tridiagonal(lower, diag, upper, rhs)


def bessel_j01(z):
    return kernels.bessel_j01(z)
