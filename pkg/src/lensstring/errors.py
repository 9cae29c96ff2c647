"""Exception hierarchy.

Every error raised on bad mathematical input derives from
:class:`LensStringError` so the CLI can map it to exit code 2.
"""


class LensStringError(ValueError):
    pass


class DimensionError(LensStringError):
    """Operands live in different rings (group order or modulus differ)."""


class NotInvertibleError(LensStringError):
    """Raised by unit inversion; carries the singular circulant system.

    ``matrix`` is the circulant matrix over Z/mZ, ``column`` the elimination
    column where no unit pivot could be produced and ``ideal`` the generator
    of the (proper) ideal spanned by that column.
    """

    def __init__(self, message, matrix=None, column=None, ideal=None):
        super().__init__(message)
        self.matrix = matrix
        self.column = column
        self.ideal = ideal


class InvalidMultiplierError(LensStringError):
    pass


class InvalidComponentError(LensStringError):
    pass


class InvalidLensError(LensStringError):
    pass


class InvalidTorsionExpression(LensStringError):
    pass


class UnsupportedDegreeError(NotImplementedError):
    """The requested operation lies outside the bidegrees that are modelled."""
