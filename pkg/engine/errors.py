"""
Exception types for the projection engine.

Every failure the engine can signal is a ConeError, so callers (the CLI in
particular) can separate bad input from numerical trouble with one except
clause per family.
"""


class ConeError(ValueError):
    """Base class for all projection engine errors."""


class NonFinite(ConeError):
    """A matrix or vector contains NaN or Inf entries."""


class SingularGenerators(ConeError):
    """Generator matrix is not invertible to working precision."""


class DimensionMismatch(ConeError):
    """Vector or matrix shape does not match the cone dimension."""


class DimensionGuard(ConeError):
    """Exact enumeration refused because the dimension is too large."""


class NotSubdual(ConeError):
    """Subdual pruning requested on a cone that is not subdual."""


class GenerationFailure(ConeError):
    """Random cone generation kept drawing singular matrices."""


class SolveFailure(ConeError, ArithmeticError):
    """A Gram system could not be solved numerically."""


class NoSectorFound(ConeError, ArithmeticError):
    """Exact enumeration found no subset with nonnegative coefficients."""


__all__ = [
    "ConeError",
    "NonFinite",
    "SingularGenerators",
    "DimensionMismatch",
    "DimensionGuard",
    "NotSubdual",
    "GenerationFailure",
    "SolveFailure",
    "NoSectorFound",
]
