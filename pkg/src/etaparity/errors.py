"""Exception types shared across the package.

Domain errors (as opposed to bad user input) all derive from
:class:`EtaParityError` so callers such as the CLI can map them to a
single exit status.
"""


class EtaParityError(Exception):
    """Base class for domain errors raised by this package."""


class NotAUnitError(EtaParityError):
    """Series has constant term 0 and therefore no multiplicative inverse."""


class BoundExceedsTruncationError(EtaParityError):
    """A counting bound reaches past the valid truncation of a series."""


class CountOverflowError(EtaParityError):
    """An exact representation count no longer fits a 64-bit accumulator.

    ``degree`` is the first degree whose accumulator would overflow.
    """

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"exact count accumulator overflow at degree {degree}")


class EtaSyntaxError(ValueError):
    """Malformed eta-quotient expression."""


class ZeroSubscriptError(EtaSyntaxError):
    """Subscript 0 in an eta-quotient expression (f0 is meaningless)."""
