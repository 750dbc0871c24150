"""Exception types shared across the package."""


class SplitOctError(Exception):
    """Base class for all library errors."""


class DomainError(SplitOctError, ValueError):
    """Operand outside the domain of an operation (mixed fields, bad lengths...)."""


class NotInvertibleError(SplitOctError, ZeroDivisionError):
    """Attempt to invert zero or a zero-norm octonion."""


class CapacityError(SplitOctError):
    """A size bound (enumeration bound, degree cap) was exceeded."""


class ParseError(DomainError):
    """Malformed literal. ``pos`` is the 0-based offset of the offending character."""

    def __init__(self, message, text="", pos=0):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class InapplicableError(SplitOctError):
    """An identity check whose preconditions do not hold for the given input."""
