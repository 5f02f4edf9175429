"""Exception types shared across the package."""


class RosetteError(Exception):
    """Base class for every error raised by :mod:`rosette`."""


class ParseError(RosetteError, ValueError):
    """An expression could not be turned into a polynomial or exponential sum.

    ``offset`` is a byte offset into the UTF-8 encoded source text.
    """

    def __init__(self, message, offset=0, expected=None, text=None):
        self.message = message
        self.offset = offset
        self.expected = expected
        self.text = text
        super().__init__(self.render())

    def render(self):
        msg = f"offset {self.offset}: {self.message}"
        if self.expected:
            msg += f" (expected {self.expected})"
        return msg


class NumericError(RosetteError, ArithmeticError):
    """A numerical procedure failed or its result would be ambiguous."""


class DomainError(NumericError, ValueError):
    """An argument lies outside the domain of the operation."""


class IndeterminateError(RosetteError, ValueError):
    """A property cannot be decided from the information available.

    Raised when opaque floating point exponents are involved and the caller
    has not asserted rational independence for them.
    """
