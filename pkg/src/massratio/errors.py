"""Exception types raised across the package."""


class MassRatioError(Exception):
    """Base class for all package errors."""


class InvalidParameter(MassRatioError, ValueError):
    """An argument violates a documented precondition."""


class DegenerateResource(MassRatioError, ValueError):
    """The resource has (numerically) zero mass."""


class NumericalFailure(MassRatioError, RuntimeError):
    """An iteration failed to converge or a root bracket was invalid."""


class NoPositiveSolution(MassRatioError, ValueError):
    """d * lambda_1(m) >= 1: the Dirichlet problem has no positive solution."""


class InsufficientData(MassRatioError, ValueError):
    """Too few records for a regression."""


class IoError(MassRatioError, OSError):
    """Output could not be written."""
