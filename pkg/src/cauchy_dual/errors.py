class CauchyDualError(Exception):
    """Base class for errors raised by this package."""


class ShapeError(CauchyDualError, ValueError):
    pass


class PreconditionError(CauchyDualError, ValueError):
    """An input violates a documented precondition; ``residual`` says by how much."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class FactorizationError(CauchyDualError, ArithmeticError):
    """An iterative factorization did not converge.

    ``iterations`` is the sweep count reached, or ``None`` when the backend
    (LAPACK) does not report one.
    """

    def __init__(self, message: str, iterations: int | None = None):
        super().__init__(message)
        self.iterations = iterations


class RouteFailure(CauchyDualError, ArithmeticError):
    """A dual-computation route could not be completed reliably."""


class MatrixFormatError(CauchyDualError, ValueError):
    """Malformed matrix / block / kernel JSON. ``where`` names the field or line."""

    def __init__(self, message: str, where: str | None = None):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
