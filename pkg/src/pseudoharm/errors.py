"""Exception types shared across the package."""


class PseudoharmError(Exception):
    """Base class for all package errors."""


class DomainError(PseudoharmError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at or too close to a pole of the expression."""


class NonConvergenceError(PseudoharmError, ArithmeticError):
    """An iterative procedure exhausted its budget without converging."""

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class BracketError(PseudoharmError, ArithmeticError):
    """A root scan found no sign change in the search window."""

    def __init__(self, message, **context):
        super().__init__(message)
        self.context = context


class EvaluationOverflowError(PseudoharmError, OverflowError):
    """A requested value exceeds double-precision range; the threshold is reported."""

    def __init__(self, message, threshold=None):
        super().__init__(message)
        self.threshold = threshold
