"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`AlgebraError`;
the command-line front end reports these by class name.
"""


class AlgebraError(Exception):
    """Base class for domain errors."""


class AmbientMismatch(AlgebraError):
    pass


class NotAFlag(AlgebraError):
    pass


class NotNilpotent(AlgebraError):
    pass


class ZeroVector(AlgebraError):
    pass


class ZeroMatrix(AlgebraError):
    pass


class LengthMismatch(AlgebraError):
    pass


class NotComplementary(AlgebraError):
    pass


class DegreeMismatch(AlgebraError):
    pass


class NotSl2(AlgebraError):
    pass


class NonIntegerSpectrum(AlgebraError):
    pass


class NotDiagonalizable(AlgebraError):
    pass


class IrrationalSpectrum(AlgebraError):
    """Raised with the offending irreducible factor(s) of the characteristic polynomial."""

    def __init__(self, message, factors=()):
        super().__init__(message)
        self.factors = tuple(factors)


class NotInAlgebra(AlgebraError):
    pass


class NotInvertibleOnOverlap(AlgebraError):
    pass


class BoundUnstable(AlgebraError):
    pass


class InconsistentWindow(AlgebraError):
    pass


class BadDegree(AlgebraError):
    pass
