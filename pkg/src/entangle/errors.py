"""Exception hierarchy shared by every module."""


class EntangleError(Exception):
    """Base class for all errors raised by this package."""


class InputError(EntangleError, ValueError):
    """An argument violates an operation's precondition."""


class ParseError(InputError):
    """Malformed graph text. ``line`` is 1-based, or None when not line-bound."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetError(EntangleError):
    """An exhaustive search would exceed its documented budget.

    ``estimate`` is the size the search would have needed; ``lower_bound``
    carries any partial answer the caller had already established.
    """

    def __init__(self, message: str, estimate: int | None = None,
                 lower_bound: int | None = None):
        self.estimate = estimate
        self.lower_bound = lower_bound
        super().__init__(message)


class InvariantError(EntangleError, AssertionError):
    """An internal consistency check failed. Never expected on valid input."""
