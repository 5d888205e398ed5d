"""Semantic exception hierarchy shared across the package."""


class RRDesignError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameter(RRDesignError, ValueError):
    """A design parameter, hypothesis setting, or argument violates its contract."""


class InfiniteBudget(RRDesignError, ArithmeticError):
    """The privacy budget is unbounded (a report probability ratio divides by zero)."""


class NoSolution(RRDesignError):
    """No design parameter attains the requested privacy budget."""


class ParseError(RRDesignError, ValueError):
    """Malformed dataset input.

    Carries the 1-based line number where parsing failed (0 when the problem
    is not tied to a specific line, e.g. an empty stream).
    """

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class InconsistentHeader(ParseError):
    """Dataset header or declared design parameters are invalid."""
