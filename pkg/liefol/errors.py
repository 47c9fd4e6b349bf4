"""
Exception hierarchy for liefol.
Every error is also a ValueError so callers that only know the builtin still catch it.
"""

from typing import Optional


class LiefolError(ValueError):
    """Base class for all library errors."""


class DimensionMismatchError(LiefolError):
    """Vectors, matrices or structure constants of incompatible dimension."""


class InvalidAlgebraError(LiefolError):
    """Structure constants that fail antisymmetry or the Jacobi identity."""


class SplitError(LiefolError):
    """Malformed vertical/horizontal index split."""


class AlmostComplexError(LiefolError):
    """A matrix that is not an orthogonal almost complex structure."""


class FamilyConstraintError(LiefolError):
    """A family parameter violates the family's nondegeneracy constraints."""

    def __init__(self, family: str, constraint: str, message: Optional[str] = None):
        self.family = family
        self.constraint = constraint
        super().__init__(message or f"{family}: constraint violated: {constraint}")


class ResidualError(LiefolError):
    """Params4D that do not define a Lie algebra (nonzero constraint residuals)."""


class ClassificationGapError(LiefolError):
    """A residual-free normal form that matches no family."""


class NormalizationError(LiefolError):
    """The split does not satisfy the hypotheses needed to reach the normal form."""


class HypothesisError(LiefolError):
    """The foliation does not satisfy the hypotheses of the curvature statement."""


class SeriesRangeError(LiefolError):
    """Split index out of range for a Nil or Sol series algebra."""


class AlgebraFileError(LiefolError):
    """Schema or syntax violation in an algebra document."""

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
