"""Exception types shared across the package."""


class MonadicError(Exception):
    """Base class for every error raised by this package."""


class ArityError(MonadicError, ValueError):
    def __init__(self, what, expected, actual):
        self.what = what
        self.expected = expected
        self.actual = actual
        super().__init__(f"{what}: expected {expected} argument(s), got {actual}")


class ParseError(MonadicError, ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


class UnknownFunction(ParseError):
    pass


class NotProper(MonadicError, ValueError):
    """Raised when a starred subexpression has a non-zero nullability."""

    def __init__(self, subexpr):
        self.subexpr = subexpr
        super().__init__(f"expression is not proper: {subexpr} is starred "
                         f"but its body is nullable")


class UnknownVariable(MonadicError, KeyError):
    def __str__(self):
        return f"unknown variable {self.args[0]!r}"


class OracleBudgetExceeded(MonadicError, RuntimeError):
    pass


class IncompleteAutomaton(MonadicError, RuntimeError):
    """A run left the explored part of a partially built automaton."""
